//! Command-line tools and HTTP service for the qana teaching simulator.

pub mod cli;
pub mod commands;
pub mod repl;
pub mod server;
pub mod view;

pub use server::{router, serve, ServerConfig};
pub use view::StateView;
