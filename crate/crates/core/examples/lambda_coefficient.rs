//! The coefficient λ(A) over a range of A.

use spinframe::spin::lambda_coefficient;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in [0.25, 0.5, 0.6246, 1.0, 2.0, 4.0] {
        println!("lambda({a:<6}) = {:.10}", lambda_coefficient(a)?);
    }
    Ok(())
}
