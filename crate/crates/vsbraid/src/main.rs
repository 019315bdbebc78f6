fn main() { std::process::exit(vsbraid::cli::run(std::env::args().skip(1).collect())); }
