use clap::Parser;
use fibwrt::cli::{self, Cli};
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("FIBWRT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let args = Cli::parse();
    let result = cli::job_from_command(args.command).and_then(cli::run);
    match result {
        Ok((value, summary)) => {
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
            eprintln!("{summary}");
            if value["command"] == "check" && value["all_pass"] != true {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&cli::error_value(&e)).unwrap()
            );
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
