#![allow(dead_code)]

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ontoforge::api::{router, AppState};
use ontoforge::service::LlmBackend;
use serde_json::Value;
use tower::ServiceExt;

pub struct Api {
    pub app: Router,
}

impl Api {
    pub fn new(llm: Option<LlmBackend>) -> Self {
        Api {
            app: router(AppState::new(llm), None),
        }
    }

    pub fn with_router(app: Router) -> Self {
        Api { app }
    }

    pub async fn raw(
        &self,
        method: Method,
        uri: &str,
        body: Option<String>,
        json: bool,
    ) -> (StatusCode, Vec<u8>) {
        let mut req = Request::builder().method(method).uri(uri);
        if json {
            req = req.header("content-type", "application/json");
        }
        let req = req
            .body(body.map(Body::from).unwrap_or_else(Body::empty))
            .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp
            .into_body()
            .collect()
            .await
            .unwrap()
            .to_bytes()
            .to_vec();
        (status, bytes)
    }

    pub async fn json(
        &self,
        method: Method,
        uri: &str,
        body: Option<Value>,
    ) -> (StatusCode, Value) {
        let (status, bytes) = self
            .raw(method, uri, body.map(|b| b.to_string()), true)
            .await;
        let value = if bytes.is_empty() {
            Value::Null
        } else {
            serde_json::from_slice(&bytes)
                .unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
        };
        (status, value)
    }

    pub async fn text(&self, uri: &str) -> (StatusCode, String) {
        let (status, bytes) = self.raw(Method::GET, uri, None, false).await;
        (status, String::from_utf8(bytes).unwrap())
    }

    pub async fn new_session(&self, ofn: Option<&str>) -> String {
        let (status, bytes) = self
            .raw(Method::POST, "/sessions", ofn.map(str::to_string), false)
            .await;
        assert_eq!(status, StatusCode::CREATED);
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        v["id"].as_str().unwrap().to_string()
    }

    /// Translates with the pattern backend and returns the stage response.
    pub async fn translate(&self, session: &str, sentence: &str) -> (StatusCode, Value) {
        self.json(
            Method::POST,
            &format!("/sessions/{session}/translate"),
            Some(serde_json::json!({ "sentence": sentence, "backend": "pattern" })),
        )
        .await
    }

    pub async fn decide(
        &self,
        session: &str,
        stage: &str,
        accept: Vec<usize>,
    ) -> (StatusCode, Value) {
        self.json(
            Method::POST,
            &format!("/sessions/{session}/stages/{stage}/decision"),
            Some(serde_json::json!({ "accept": accept })),
        )
        .await
    }

    /// Translates and accepts every item; returns the merge report.
    pub async fn enrich(&self, session: &str, sentence: &str) -> Value {
        let (status, staged) = self.translate(session, sentence).await;
        assert_eq!(status, StatusCode::CREATED, "{staged}");
        let id = staged["stage"]["id"].as_str().unwrap().to_string();
        let n = staged["stage"]["items"].as_array().unwrap().len();
        let (status, report) = self.decide(session, &id, (0..n).collect()).await;
        assert_eq!(status, StatusCode::OK, "{report}");
        report
    }
}
