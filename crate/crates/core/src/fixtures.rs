//! Bundled example algebras and complexes.

use std::fmt::Write as _;

pub const K_QUIVER: &str = include_str!("../fixtures/k.quiver");
pub const A2_QUIVER: &str = include_str!("../fixtures/a2.quiver");
pub const A2_TILTING_COMPLEX: &str = include_str!("../fixtures/a2_tilting.complex");
pub const EX2_QUIVER: &str = include_str!("../fixtures/ex2.quiver");
pub const EX2_COMPLEX: &str = include_str!("../fixtures/ex2.complex");
pub const EX3_QUIVER: &str = include_str!("../fixtures/ex3.quiver");
pub const EX3_COMPLEX: &str = include_str!("../fixtures/ex3.complex");
pub const A0_QUIVER: &str = include_str!("../fixtures/a0.quiver");

/// The family with two arms of length `n` meeting a commutative square; `n >= 2`.
pub fn ex1_quiver(n: usize) -> String {
    assert!(n >= 2, "family is defined for n >= 2");
    let mut s = String::from("vertices:");
    for v in 1..=2 * n + 4 {
        let _ = write!(s, " {v}");
    }
    s.push('\n');
    s.push_str("arrow c1: 3 -> 1\narrow c2: 3 -> 2\narrow d1: 1 -> 4\narrow d2: 2 -> 4\n");
    for i in 1..=n {
        let _ = writeln!(s, "arrow a{i}: {} -> {}", 2 * i + 3, 2 * i + 1);
    }
    for i in 1..=n {
        let _ = writeln!(s, "arrow b{i}: {} -> {}", 2 * i + 2, 2 * i + 4);
    }
    s.push_str("relation c1.d1 - c2.d2\n");
    for i in 1..n {
        let _ = writeln!(s, "relation a{}.a{i}", i + 1);
    }
    for i in 1..n {
        let _ = writeln!(s, "relation b{i}.b{}", i + 1);
    }
    s
}

pub fn ex1_complex(n: usize) -> String {
    let even: Vec<String> = (1..=n + 2).filter(|&i| i != 2).map(|i| format!("P{}", 2 * i)).collect();
    let odd: Vec<String> = (1..=n + 2).filter(|&i| i != 2).map(|i| format!("P{}", 2 * i - 1)).collect();
    format!(
        "stalk0 {}\nmap P4 -> P2 : d2\nmap P1 -> P3 : c1\nstalk1 {}\n",
        even.join(" + "),
        odd.join(" + ")
    )
}
