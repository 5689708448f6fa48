fn main() {
    if let Some(n) = std::env::var("LVA_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    std::process::exit(lva_cli::run_cli(std::env::args_os()));
}
