//! Bundled example links and value files.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::link::{Crossing, PdCode, PureBraidWord};
use crate::mu::{LongitudeSystem, LongitudeSystemFile};
use crate::word::Word;

/// Depth at which the Hopf link's invariants are read in the examples.
pub const HOPF_DEPTH: usize = 3;
/// Depth at which the Borromean rings' invariants are read in the examples.
pub const BORROMEAN_DEPTH: usize = 4;
/// Depth of the bundled `L_6` system: one more than the detector weight.
pub const L6_DEPTH: usize = 7;

pub const HOPF_BRAID: &str = "2; A12";
pub const BORROMEAN_BRAID: &str = "3; A13^-1 A23^-1 A13 A23";

/// The minimal linking that carries the weight-nine self-mutation example.
pub const STAR_LINKING: &str = "lk(yyxy,(yxy,xy))";

fn crossing(arcs: [u32; 4], sign: i8) -> Crossing {
    Crossing { arcs, sign }
}

/// Two-component unlink with no crossings.
pub fn unlink_pd() -> PdCode {
    PdCode::new(vec![vec![1], vec![2]], Vec::new()).expect("valid literal")
}

/// Positive Hopf link, the closure of `σ_1^2`.
pub fn hopf_pd() -> PdCode {
    PdCode::new(
        vec![vec![1, 2], vec![3, 4]],
        vec![crossing([1, 4, 2, 3], 1), crossing([4, 1, 3, 2], 1)],
    )
    .expect("valid literal")
}

/// Borromean rings, the closure of `(σ_1 σ_2^{-1})^3`.
pub fn borromean_pd() -> PdCode {
    PdCode::new(
        vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8], vec![9, 10, 11, 12]],
        vec![
            crossing([1, 6, 2, 5], 1),
            crossing([9, 2, 10, 3], -1),
            crossing([6, 11, 7, 10], 1),
            crossing([3, 7, 4, 8], -1),
            crossing([11, 1, 12, 4], 1),
            crossing([8, 12, 5, 9], -1),
        ],
    )
    .expect("valid literal")
}

pub fn hopf_braid() -> PureBraidWord {
    HOPF_BRAID.parse().expect("valid literal")
}

pub fn borromean_braid() -> PureBraidWord {
    BORROMEAN_BRAID.parse().expect("valid literal")
}

fn x(i: u32) -> Word {
    Word::generator(i)
}

/// Longitudes of the 2-component link `L_6` from Milnor's family, written
/// as commutators so that the first nonvanishing `μ̄` has weight 6:
/// `μ̄(112222) = -1` and `μ̄(221111) = 0`.
///
/// With `u_k = ad(X_2)^k X_1` the leading terms are `W_1 = -u_4` and
/// `W_2 = [u_0, u_3] - [u_1, u_2]`, so `[X_1, W_1] + [X_2, W_2] = 0` as a
/// link's longitudes require.
pub fn l6_system() -> LongitudeSystem {
    let w1 = Word::left_normed(&[x(1), x(2), x(2), x(2), x(2)]).invert();
    let inner = Word::commutator(&x(2), &x(1));
    let deep = Word::commutator(&x(2), &inner);
    let w2 = Word::commutator(&x(1), &Word::commutator(&x(2), &deep)) * &Word::commutator(&inner, &deep).invert();
    LongitudeSystem::new(2, L6_DEPTH, vec![w1, w2]).expect("valid literal")
}

pub fn l6_file() -> LongitudeSystemFile {
    let mut file = l6_system().to_file();
    file.metadata.insert("name".into(), "L_6".into());
    file.metadata.insert(
        "provenance".into(),
        "DERIVED: algebraic transcription; weight < 6 vanishes, mu(112222) = -1, mu(221111) = 0".into(),
    );
    file
}

/// Values for the weight-nine evaluation: the starred linking is 1 and every
/// other class defaults to 0.
pub fn star_values() -> BTreeMap<String, i64> {
    BTreeMap::from([(STAR_LINKING.to_string(), 1)])
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("corpus types serialize");
    s.push('\n');
    s
}

/// File names and contents of the bundled corpus, in install order.
pub fn files() -> Vec<(&'static str, String)> {
    vec![
        ("unlink.json", pretty(&unlink_pd())),
        ("hopf.json", pretty(&hopf_pd())),
        ("borromean.json", pretty(&borromean_pd())),
        ("hopf.braid", format!("{HOPF_BRAID}\n")),
        ("borromean.braid", format!("{BORROMEAN_BRAID}\n")),
        ("l6.json", pretty(&l6_file())),
        ("star.json", pretty(&star_values())),
    ]
}

/// Writes the corpus into `dir`, creating it if needed. Existing files are
/// overwritten with identical bytes, so installing twice changes nothing.
pub fn install(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, contents) in files() {
        let path = dir.join(name);
        fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}
