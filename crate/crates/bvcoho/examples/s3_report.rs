//! Prints the F3 S3 check table.

use std::time::Instant;

use bvcoho::verify::{verify_s3, VerifyOptions};

fn main() -> Result<(), bvcoho::Error> {
    let start = Instant::now();
    let report = verify_s3(3, VerifyOptions::full())?;
    print!("{}", report.table());
    println!("{} in {:.1?}", if report.passed() { "PASS" } else { "FAIL" }, start.elapsed());
    Ok(())
}
