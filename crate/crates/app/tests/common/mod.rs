#![allow(dead_code)]

use qana::ServerConfig;
use reqwest::{Client, StatusCode};
use serde_json::Value;
use tokio::net::TcpListener;

/// Starts a server on an ephemeral port and returns its base URL.
pub async fn spawn_server(config: ServerConfig) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(qana::serve(listener, config));
    format!("http://{addr}")
}

pub async fn post(client: &Client, url: String, body: Value) -> (StatusCode, Value) {
    let r = client.post(url).json(&body).send().await.unwrap();
    let status = r.status();
    (status, r.json().await.unwrap_or(Value::Null))
}

pub async fn get(client: &Client, url: String) -> (StatusCode, Value) {
    let r = client.get(url).send().await.unwrap();
    let status = r.status();
    (status, r.json().await.unwrap_or(Value::Null))
}
