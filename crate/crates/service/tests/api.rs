use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use greenseq_core::{FramedState, Quiver};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(b) => {
            req = req.header("content-type", "application/json");
            Body::from(b.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, body: Value) -> String {
    let (status, v) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v["id"].as_str().unwrap().to_string()
}

fn a2() -> Value {
    json!({ "quiver": { "vertices": 2, "arrows": [[1, 2]] } })
}

/// Colors in a view must match the signs of the c-matrix rows it reports.
fn check_colors(view: &Value) {
    let cmat = view["cmat"].as_array().unwrap();
    for (i, v) in view["vertices"].as_array().unwrap().iter().enumerate() {
        let row: Vec<i64> = cmat[i].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        assert_eq!(v["green"].as_bool().unwrap(), row.iter().all(|&x| x >= 0));
        assert_eq!(v["c_vector"], cmat[i]);
    }
}

#[tokio::test]
async fn create_view() {
    let app = greenseq_service::app();
    let (status, v) = call(&app, "POST", "/sessions", Some(a2())).await;
    assert_eq!(status, StatusCode::CREATED);
    let view = &v["view"];
    assert_eq!(view["principal"], json!([[0, 1], [-1, 0]]));
    assert_eq!(view["cmat"], json!([[1, 0], [0, 1]]));
    assert!(view["vertices"].as_array().unwrap().iter().all(|x| x["green"] == true));
    assert_eq!(view["all_red"], false);
    assert_eq!(view["permutation"], Value::Null);

    let id = create(&app, json!({ "vertices": 1, "arrows": [] })).await;
    let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(view["vertices"], json!([{ "id": 1, "green": true, "c_vector": [1] }]));
}

#[tokio::test]
async fn malformed_quiver_is_rejected() {
    let app = greenseq_service::app();
    let (status, v) = call(&app, "POST", "/sessions", Some(json!({ "b_matrix": [[0, 1], [1, 0]] }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].as_str().unwrap().contains("skew"));
    let (status, _) = call(&app, "POST", "/sessions", Some(json!({ "preset": "nope" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn maximal_green_sequences_complete() {
    let app = greenseq_service::app();
    let id = create(&app, a2()).await;
    call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": 1 }))).await;
    let (status, view) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": 2 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["mgs_complete"], true);
    assert_eq!(view["permutation"], json!([1, 2]));
    check_colors(&view);

    let (_, export) = call(&app, "GET", &format!("/sessions/{id}/export"), None).await;
    assert_eq!(export["sequence"], "1,2");
    assert_eq!(Quiver::from_json(&export["quiver"]).unwrap(), Quiver::linear_a(2).unwrap());

    let id = create(&app, json!({ "preset": "A2" })).await;
    for k in [2, 1, 2] {
        call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": k }))).await;
    }
    let (_, view) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(view["mgs_complete"], true);
    assert_eq!(view["permutation"], json!([2, 1]));
    assert_eq!(view["permutation_cycles"], "(1 2)");
}

#[tokio::test]
async fn red_moves_are_flagged_and_undoable() {
    let app = greenseq_service::app();
    let id = create(&app, a2()).await;
    let (_, initial) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let (_, after_green) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": 1 }))).await;
    assert_eq!(after_green["last_move"], json!({ "vertex": 1, "green": true }));
    let (status, view) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": 1 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(view["last_move"]["green"], false);
    assert_eq!(view["history"].as_array().unwrap().len(), 2);
    check_colors(&view);

    let (_, undone) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(undone, after_green);
    let (_, undone) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(undone, initial);
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn bad_vertex_and_unknown_session() {
    let app = greenseq_service::app();
    let id = create(&app, a2()).await;
    let (status, _) = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": 3 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", "/sessions/nope/mutate", Some(json!({ "vertex": 1 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, _) = call(&app, "DELETE", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NO_CONTENT);
    let (status, _) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "DELETE", &format!("/sessions/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn session_matches_stateless_replay() {
    let app = greenseq_service::app();
    let id = create(&app, json!({ "preset": "Q_{2,2,2}" })).await;
    let moves = [1, 2, 3, 1, 1, 2];
    let mut view = Value::Null;
    for &k in &moves {
        view = call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": k }))).await.1;
    }
    let replay = FramedState::new(&Quiver::preset("Q_{2,2,2}").unwrap()).mutate_sequence(&moves).unwrap();
    assert_eq!(view, greenseq_service::view(&replay));
    check_colors(&view);
}

#[tokio::test]
async fn concurrent_sessions() {
    let app = greenseq_service::app();
    let ids: Vec<String> = create_many(&app, 8).await;
    let tasks: Vec<_> = ids
        .iter()
        .map(|id| {
            let app = app.clone();
            let id = id.clone();
            tokio::spawn(async move {
                for k in [1, 2, 3] {
                    call(&app, "POST", &format!("/sessions/{id}/mutate"), Some(json!({ "vertex": k }))).await;
                }
                call(&app, "GET", &format!("/sessions/{id}"), None).await.1
            })
        })
        .collect();
    for t in tasks {
        let view = t.await.unwrap();
        assert_eq!(view["sequence"], "1,2,3");
        assert_eq!(view["mgs_complete"], true);
    }
}

async fn create_many(app: &Router, n: usize) -> Vec<String> {
    let mut ids = Vec::new();
    for _ in 0..n {
        ids.push(create(app, json!({ "preset": "A3" })).await);
    }
    ids
}

#[tokio::test]
async fn cors_allows_localhost_only() {
    let app = greenseq_service::app();
    let preflight = |origin: &'static str| {
        Request::builder()
            .method("OPTIONS")
            .uri("/sessions")
            .header("origin", origin)
            .header("access-control-request-method", "POST")
            .body(Body::empty())
            .unwrap()
    };
    let resp = app.clone().oneshot(preflight("http://localhost:5173")).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "http://localhost:5173");
    let resp = app.clone().oneshot(preflight("http://example.com")).await.unwrap();
    assert!(resp.headers().get("access-control-allow-origin").is_none());
}
