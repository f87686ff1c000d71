fn main() {
    // die quietly when a downstream pipe closes, like other report-printing
    // command-line tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(cayley_lab::cli::run(std::env::args_os()));
}
