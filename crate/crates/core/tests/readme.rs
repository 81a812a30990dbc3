//! Keeps the README's library example compiling and correct.

use geomword::closed::closed_moments;
use geomword::{Exact, GeometricLaw, Scalar, Statistic, Word};

#[test]
fn readme_example() -> Result<(), geomword::Error> {
    let word = Word::new(vec![3, 1, 4, 1, 5])?;
    assert_eq!(word.inversions(), 3);

    let law = GeometricLaw::new(Exact::ratio(1, 2))?;
    let moments = closed_moments(Statistic::Knuth, 3, &law);
    assert_eq!(moments.mean, Exact::ratio(40, 21));
    assert_eq!(moments.variance, Exact::ratio(416, 441));
    Ok(())
}
