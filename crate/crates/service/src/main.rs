use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use clap::Parser;
use uwcam_core::presets::{data_dir_from_env, load_catalog};
use uwcam_service::{router, DEFAULT_BIND, DEFAULT_CORS_ORIGINS, DEFAULT_PORT};

#[derive(Debug, Parser)]
#[command(
    name = "uwcam-service",
    version,
    about = "HTTP API for the underwater camera design engine"
)]
struct Args {
    #[arg(long, default_value = DEFAULT_BIND)]
    bind: String,
    #[arg(long, default_value_t = DEFAULT_PORT)]
    port: u16,
    /// Preset directory; defaults to $UWCAM_DATA_DIR or ./data.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Browser origin allowed to call the API (repeatable).
    #[arg(long = "cors-origin")]
    cors_origins: Vec<String>,
}

#[tokio::main]
async fn main() {
    let args = Args::parse();
    let dir = args.data_dir.unwrap_or_else(data_dir_from_env);
    let catalog = match load_catalog(&dir) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    for d in catalog.diagnostics().iter().filter(|d| d.is_error()) {
        eprintln!("{d}");
    }
    let origins = if args.cors_origins.is_empty() {
        DEFAULT_CORS_ORIGINS.iter().map(|s| s.to_string()).collect()
    } else {
        args.cors_origins
    };
    let addr: SocketAddr = match format!("{}:{}", args.bind, args.port).parse() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: invalid bind address: {e}");
            std::process::exit(2);
        }
    };
    let app = router(Arc::new(catalog), &origins);
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: cannot bind {addr}: {e}");
            std::process::exit(2);
        }
    };
    eprintln!("listening on http://{addr}");
    if let Err(e) = axum::serve(listener, app).await {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
