#![allow(dead_code)]

use std::path::{Path, PathBuf};

use matinv::{find_splitting_element, in_u, Field, MatTuple, Matrix, SplitBudget};
use matinv_cli::{MapFile, Outcome, TupleFile, VarietyFile};

pub fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

pub fn write_tuple(dir: &Path, name: &str, x: &MatTuple) -> PathBuf {
    write_json(dir, name, &TupleFile::from_tuple(x))
}

pub fn run(args: &[&str]) -> Outcome {
    let mut full = vec!["matinv"];
    full.extend_from_slice(args);
    matinv_cli::run(full)
}

pub fn run_paths(args: &[&str], paths: &[&Path]) -> Outcome {
    let mut full: Vec<String> = vec!["matinv".into()];
    full.extend(args.iter().map(|s| s.to_string()));
    full.extend(paths.iter().map(|p| p.display().to_string()));
    matinv_cli::run(full)
}

pub fn e(f: &Field, n: usize, i: usize, j: usize) -> Matrix {
    Matrix::unit(f, n, i, j)
}

/// `M_2(k[t])` sampled at integer `t`: generators `e12, e21, t I`.
pub fn s_points(ts: &[i64]) -> VarietyFile {
    let q = Field::rationals();
    let points = ts
        .iter()
        .map(|&t| {
            let x = MatTuple::new(vec![e(&q, 2, 0, 1), e(&q, 2, 1, 0), Matrix::scalar(&q, 2, &q.from_i64(t))]).unwrap();
            (format!("t={t}"), x)
        })
        .collect();
    variety_file("S = M2(k[t])", points)
}

/// The subring with lower left entry in `t k[t]`, generated by
/// `e11, e12, t e21, e22, t I`, sampled at integer `t`.
pub fn r_points(ts: &[i64]) -> VarietyFile {
    let q = Field::rationals();
    let points = ts
        .iter()
        .map(|&t| {
            let tt = q.from_i64(t);
            let x = MatTuple::new(vec![
                e(&q, 2, 0, 0),
                e(&q, 2, 0, 1),
                e(&q, 2, 1, 0).scale(&tt),
                e(&q, 2, 1, 1),
                Matrix::scalar(&q, 2, &tt),
            ])
            .unwrap();
            (format!("t={t}"), x)
        })
        .collect();
    variety_file("R", points)
}

/// `M_2(k[t])` on the five generators `e11, e12, e21, e22, t I`.
pub fn s5_points(ts: &[i64]) -> VarietyFile {
    let q = Field::rationals();
    let points = ts
        .iter()
        .map(|&t| {
            let x = MatTuple::new(vec![
                e(&q, 2, 0, 0),
                e(&q, 2, 0, 1),
                e(&q, 2, 1, 0),
                e(&q, 2, 1, 1),
                Matrix::scalar(&q, 2, &q.from_i64(t)),
            ])
            .unwrap();
            (format!("t={t}"), x)
        })
        .collect();
    variety_file("S on five generators", points)
}

fn variety_file(label: &str, points: Vec<(String, MatTuple)>) -> VarietyFile {
    let (labels, points): (Vec<String>, Vec<MatTuple>) = points.into_iter().unzip();
    VarietyFile::from_variety(&matinv::variety_from_labelled_points(points, labels, label).unwrap())
}

/// Images of the subring generators in terms of `e12, e21, t I`.
pub fn inclusion_map() -> MapFile {
    map_file(3, &["X1*X2", "X1", "X3*X2", "X2*X1", "X3"])
}

/// A map onto `M_2(k[t])`: the five images generate at every `t`.
pub fn surjection_map() -> MapFile {
    map_file(3, &["X1*X2", "X1", "X2", "X2*X1", "X3"])
}

fn map_file(source_m: usize, images: &[&str]) -> MapFile {
    MapFile {
        field: "Q".into(),
        source_m,
        target_l: images.len(),
        images: images.iter().map(|s| s.to_string()).collect(),
    }
}

/// Searches `M_2(GF(2))^2` for a generating pair with no splitting element
/// inside `budget`.
pub fn gf2_inconclusive_pair(budget: SplitBudget) -> MatTuple {
    let f = Field::prime(2).unwrap();
    let all: Vec<Matrix> = (0..16u32)
        .map(|bits| Matrix::from_fn(&f, 2, 2, |i, j| f.from_i64(((bits >> (2 * i + j)) & 1) as i64)))
        .collect();
    for a in &all {
        for b in &all {
            let x = MatTuple::new(vec![a.clone(), b.clone()]).unwrap();
            if in_u(&x).verdict && find_splitting_element(&x, budget, 0).unwrap().is_none() {
                return x;
            }
        }
    }
    panic!("no GF(2) pair without a splitting element in budget {budget:?}");
}
