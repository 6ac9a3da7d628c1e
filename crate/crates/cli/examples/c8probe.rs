fn main() {
    let o = heatblo_cli::acceptance::criterion_8();
    println!("{}", o.summary_line());
    let o = heatblo_cli::acceptance::criterion_7();
    println!("{}", o.summary_line());
}
