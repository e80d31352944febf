//! Doublings, triangular-graph codes, named small codes, and pair codes.

mod quotient;

pub use quotient::{
    is_isometry, isometry_from_check_equiv, pair_code, split_by_codeword, QuotientContext, Split,
};

use crate::divisible::{is_doubly_even, meet_big_rad};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Vector, LinearCode};

/// Generator rows of the nine doubly even self-dual codes of length 24,
/// least significant bit first.
pub const DESD24_ROWS: [[u32; 12]; 9] = [
    [
        0xC75001, 0x49F002, 0xD4B004, 0x6E3008, 0x9B3010, 0xB66020, 0xECC040, 0x1ED080, 0x3DA100,
        0x7B4200, 0xB1D400, 0xE3A800,
    ],
    [
        0x7FE801, 0x802802, 0x804804, 0x808808, 0x810810, 0x820820, 0x840840, 0x880880, 0x900900,
        0xA00A00, 0xC00C00, 0xFFF000,
    ],
    [
        0x7E0F81, 0xFC0082, 0xFC0104, 0xFC0208, 0xFC0410, 0xFC0820, 0x820FC0, 0x861000, 0x8A2000,
        0x924000, 0xA28000, 0xC30000,
    ],
    [
        0xD003C1, 0xD1A042, 0xD1A084, 0xD1A108, 0xD1A210, 0x01A3E0, 0x00E400, 0x01C800, 0x017000,
        0x720000, 0xE40000, 0xB80000,
    ],
    [
        0x7800E1, 0x88F022, 0x88F044, 0x88F088, 0xF0F0F0, 0x78E100, 0x78D200, 0x78B400, 0x787800,
        0x990000, 0xAA0000, 0xCC0000,
    ],
    [
        0xE24031, 0x738012, 0x738024, 0x91C038, 0x938C40, 0xE1C480, 0xE1C900, 0x724E00, 0x02D000,
        0x036000, 0xB40000, 0xD80000,
    ],
    [
        0xCC6009, 0x66A00A, 0xAAC00C, 0xC6C090, 0x6A60A0, 0xACA0C0, 0x6CC900, 0xA66A00, 0xCAAC00,
        0x00F000, 0x0F0000, 0xF00000,
    ],
    [
        0x0000B1, 0x0000E2, 0x000074, 0x0000D8, 0x7E8100, 0x828200, 0x848400, 0x888800, 0x909000,
        0xA0A000, 0xC0C000, 0xFF0000,
    ],
    [
        0x0000B1, 0x0000E2, 0x000074, 0x0000D8, 0x00B100, 0x00E200, 0x007400, 0x00D800, 0xB10000,
        0xE20000, 0x740000, 0xD80000,
    ],
];

/// Labels of the nine codes, in table order.
pub const DESD24_NAMES: [&str; 9] = [
    "g24",
    "d24+",
    "d12^2+",
    "(d10 e7^2)+",
    "d8^3+",
    "d6^4+",
    "d4^6+",
    "d16+ + e8",
    "e8^3",
];

/// The `index`-th (1-based) doubly even self-dual code of length 24.
pub fn desd24(index: usize) -> Result<LinearCode> {
    let rows = DESD24_ROWS
        .get(index.wrapping_sub(1))
        .ok_or_else(|| Error::Precondition(format!("no self-dual code number {index}")))?;
    let rows: Vec<u64> = rows.iter().map(|&r| r as u64).collect();
    let c = LinearCode::from_u64_rows(24, &rows)?;
    if c.dim() != 12 || !is_doubly_even(&c) || c.dual() != c {
        return Err(Error::Precondition(format!(
            "table row {index} is not self-dual"
        )));
    }
    Ok(c)
}

pub fn all_desd24() -> Vec<LinearCode> {
    (1..=9).map(|i| desd24(i).expect("embedded data")).collect()
}

/// `<(1|0), (0|1), (x|x) : x ∈ C>`.
pub fn extended_doubling(c: &LinearCode) -> LinearCode {
    let n = c.length();
    let one = Gf2Vector::ones(n);
    let zero = Gf2Vector::zeros(n);
    c.juxtapose_diag()
        .extend(&[one.concat(&zero), zero.concat(&one)])
        .expect("lengths agree")
}

/// `<(x|x) : x ∈ C> + (R ⊕ R)` with `R = C ∩ Rad C`.
pub fn generalized_doubling(c: &LinearCode) -> Result<LinearCode> {
    let r = meet_big_rad(c)?;
    c.juxtapose_diag().sum(&r.direct_sum(&r))
}

/// Two-element subsets of `{0..n-1}` in lexicographic order.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn adjacency_row(n: usize, idx: &[(usize, usize)], a: (usize, usize)) -> Gf2Vector {
    let support: Vec<usize> = idx
        .iter()
        .enumerate()
        .filter(|(_, &b)| b != a && (a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1))
        .map(|(i, _)| i)
        .collect();
    Gf2Vector::from_support(n * (n - 1) / 2, &support).expect("in range")
}

/// Rows of the adjacency matrix of the triangular graph `T(n)`, vertices
/// ordered lexicographically.
pub fn triangular_adjacency(n: usize) -> Result<Vec<Gf2Vector>> {
    if n < 4 {
        return Err(Error::Precondition(format!(
            "triangular graph needs n >= 4, got {n}"
        )));
    }
    let idx = pairs(n);
    Ok(idx.iter().map(|&a| adjacency_row(n, &idx, a)).collect())
}

/// The code generated by the adjacency matrix of `T(n)`.
pub fn triangular_code(n: usize) -> Result<LinearCode> {
    let rows = triangular_adjacency(n)?;
    LinearCode::new(n * (n - 1) / 2, rows)
}

/// `T(n)` padded with zeros to a multiple of 8, plus the all-ones word.
pub fn padded_triangular_code(n: usize) -> Result<LinearCode> {
    let t = triangular_code(n)?;
    let m = t.length();
    let l = m.div_ceil(8) * 8;
    t.pad(l - m).extend(&[Gf2Vector::ones(l)])
}

/// Rows of the adjacency matrix at the vertices `{i, n}` for `i = 1..n-2`.
pub fn triangular_basis(n: usize) -> Result<Vec<Gf2Vector>> {
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("basis needs even n, got {n}")));
    }
    if n < 4 {
        return Err(Error::Precondition(format!(
            "triangular graph needs n >= 4, got {n}"
        )));
    }
    let idx = pairs(n);
    Ok((0..n - 2)
        .map(|i| adjacency_row(n, &idx, (i, n - 1)))
        .collect())
}

/// `<1_n>⊥`, the even-weight code.
pub fn even_weight(n: usize) -> LinearCode {
    LinearCode::repetition(n).dual()
}

/// The `[8,4,4]` extended Hamming code.
pub fn e8() -> LinearCode {
    extended_doubling(&even_weight(4))
}

pub fn d16_plus() -> LinearCode {
    extended_doubling(&even_weight(8))
}

/// The first-order Reed-Muller code of length 16.
pub fn rm14() -> LinearCode {
    extended_doubling(&e8())
}

/// Builds a code from a name: `e8`, `d16plus`, `rm14`, `desd24:<1..9>`,
/// `tildeD:<name>`, `extD:<name>`, `T:<n>`, `ttgc:<n>`.
pub fn code_by_name(name: &str) -> Result<LinearCode> {
    code_by_name_depth(name, 0)
}

fn code_by_name_depth(name: &str, depth: usize) -> Result<LinearCode> {
    if depth > 4 {
        return Err(Error::Parse("name nests too deeply".into()));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad number {s:?} in {name:?}")))
    };
    let small = |n: usize| {
        if n > 64 {
            Err(Error::Parse(format!("parameter {n} too large")))
        } else {
            Ok(n)
        }
    };
    match name.split_once(':') {
        None => match name {
            "e8" => Ok(e8()),
            "d16plus" => Ok(d16_plus()),
            "rm14" => Ok(rm14()),
            _ => Err(Error::Parse(format!("unknown code name {name:?}"))),
        },
        Some(("desd24", i)) => desd24(num(i)?).map_err(|e| Error::Parse(e.to_string())),
        Some(("tildeD", inner)) => {
            let c = code_by_name_depth(inner, depth + 1)?;
            if c.length() > 64 {
                return Err(Error::Parse("inner code too long".into()));
            }
            generalized_doubling(&c).map_err(|e| Error::Parse(e.to_string()))
        }
        Some(("extD", inner)) => {
            let c = code_by_name_depth(inner, depth + 1)?;
            if c.length() > 64 {
                return Err(Error::Parse("inner code too long".into()));
            }
            Ok(extended_doubling(&c))
        }
        Some(("T", n)) => triangular_code(small(num(n)?)?),
        Some(("ttgc", n)) => padded_triangular_code(small(num(n)?)?),
        Some((head, _)) => Err(Error::Parse(format!("unknown code family {head:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(code_by_name("e8").unwrap().dim(), 4);
        assert_eq!(code_by_name("ttgc:10").unwrap().length(), 48);
        assert_eq!(code_by_name("T:7").unwrap().length(), 21);
        assert!(code_by_name("desd24:10").is_err());
        assert!(code_by_name("nope").is_err());
        assert!(code_by_name("T:x").is_err());
    }

    #[test]
    fn triangular_rows_have_degree_weight() {
        for r in triangular_adjacency(10).unwrap() {
            assert_eq!(r.weight(), 16);
        }
    }
}
