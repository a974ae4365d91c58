use std::process::ExitCode;

fn main() -> ExitCode {
    // die quietly when the read end of a pipe closes, like other line
    // printers do; the default Rust disposition turns `toral table | head`
    // into a panic
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    toral::cli::run()
}
