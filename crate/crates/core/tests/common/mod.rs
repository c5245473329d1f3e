#![allow(dead_code)]

use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// `#E(F_p)` for `y² = x³ + ax + b` by tabulating squares, point at infinity
/// included. Independent of the library's character-sum path.
pub fn naive_ec_count(a: i64, b: i64, p: u64) -> u64 {
    let p = p as i64;
    let mut roots = vec![0u64; p as usize];
    for y in 0..p {
        roots[(y * y % p) as usize] += 1;
    }
    let mut n = 1;
    for x in 0..p {
        let rhs = ((x * x % p * x + a * x + b) % p + p) % p;
        n += roots[rhs as usize];
    }
    n
}

pub fn variety_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "var"))
        .filter(|p| !p.file_name().unwrap().to_string_lossy().starts_with("malformed"))
        .collect();
    files.sort();
    files
}
