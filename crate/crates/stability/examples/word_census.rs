//! Prints how many strings and bands of length <= 6 each bundled fixture has.
use algebra::parse_algebra;
use words::{enumerate_bands, enumerate_strings};

fn main() {
    let fixtures = [
        ("a2", "vertices: 1 2\narrow a: 1 -> 2\n"),
        ("kronecker", "vertices: 1 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n"),
        (
            "cyclic3",
            "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 1\n\
             zero: a b c a b\nzero: b c a b c\nzero: c a b c a\n",
        ),
        (
            "square",
            "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow g: 4 -> 3\narrow d: 1 -> 4\n",
        ),
        ("gentle", "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nzero: a b\n"),
    ];
    let mut total = (0, 0);
    for (name, text) in fixtures {
        let q = parse_algebra(text).unwrap();
        let s = enumerate_strings(&q, 6).len();
        let b = enumerate_bands(&q, 6).len();
        println!("{name:10} strings<=6: {s:4}  bands<=6: {b}");
        total.0 += s;
        total.1 += b;
    }
    println!("{:10} strings<=6: {:4}  bands<=6: {}", "total", total.0, total.1);
}
