//! Named groups, the group-expression parser, the `(Cp×Cp)⋊Cq` family and
//! the catalog of all groups of order at most 15.
//!
//! Expression grammar (ASCII, case-sensitive):
//!
//! ```text
//! expr := atom | atom "x" expr
//! atom := "C" n | "D" n | "Q8" | "Dic" n | "A4" | "S4" | "S3" | "F8" | "F20"
//!       | "E" p² | "C" p ":" "C" n | "E" p² ":" "C" q
//! ```
//!
//! `D n` is dihedral of order `2n`, `Dic n` dicyclic of order `4n`, `E p²`
//! elementary abelian of order `p²`. `C p:C n` is `Cp ⋊ Cn` acting by a power
//! map and `E p²:C q` is `(Cp×Cp) ⋊ Cq` with an irreducible action.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::is_prime;
use crate::config::limits;
use crate::error::{Error, Result};
use crate::group::{close_generators, Group};
use crate::iso::are_isomorphic;
use crate::perm::Permutation;
use crate::products::{direct_product, regular_representation, semidirect_product, Automorphism};
use crate::rational::Rational;

/// Largest `p` for which the `GL(2, p)` action search is run.
pub const MATRIX_SEARCH_MAX_P: u64 = 50;

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    if n == 1 {
        return Ok(Group::trivial());
    }
    let images: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    close_generators(n, &[Permutation::from_usize(&images)?])
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<Group> {
    match n {
        0 => Err(Error::InvalidParameter("dihedral group D0".into())),
        1 => cyclic(2),
        2 => direct_product(&cyclic(2)?, &cyclic(2)?),
        _ => {
            let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            close_generators(
                n,
                &[
                    Permutation::from_usize(&rotation)?,
                    Permutation::from_usize(&reflection)?,
                ],
            )
        }
    }
}

/// Dicyclic group `⟨a, x | a^{2n} = 1, x² = aⁿ, x⁻¹ax = a⁻¹⟩` of order `4n`.
pub fn dicyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("dicyclic group Dic0".into()));
    }
    let m = 2 * n;
    // label 2i + j stands for a^i x^j
    let mul = |u: usize, v: usize| {
        let (i, j) = (u / 2, u % 2);
        let (k, l) = (v / 2, v % 2);
        match (j, l) {
            (0, _) => 2 * ((i + k) % m) + l,
            (_, 0) => 2 * ((i + m - k) % m) + 1,
            _ => 2 * ((i + m - k + n) % m),
        }
    };
    regular_representation(4 * n, &[2, 1], mul)
}

pub fn quaternion() -> Result<Group> {
    dicyclic(2)
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n <= 1 {
        return Ok(Group::trivial());
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    close_generators(
        n,
        &[
            Permutation::from_cycles(n, &[&[0, 1]])?,
            Permutation::from_usize(&cycle)?,
        ],
    )
}

pub fn alternating4() -> Result<Group> {
    close_generators(
        4,
        &[
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]])?,
            Permutation::from_cycles(4, &[&[0, 1, 2]])?,
        ],
    )
}

/// `Cp × Cp`.
pub fn elementary_abelian_square(p: usize) -> Result<Group> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    direct_product(&cyclic(p)?, &cyclic(p)?)
}

/// `(C2)³ ⋊ C7`, the seven involutions permuted in one orbit.
pub fn frobenius_f8() -> Result<Group> {
    let c2 = cyclic(2)?;
    let e8 = direct_product(&direct_product(&c2, &c2)?, &c2)?;
    let [a, b, c] = [0, 1, 2].map(|i| e8.generator_indices()[i]);
    // companion matrix of x³ + x + 1 over GF(2)
    let alpha = Automorphism::from_generator_images(&e8, &[b, c, e8.mul(a, b)])?;
    semidirect_product(&e8, &cyclic(7)?, &[alpha])
}

fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut x = a % p;
    let mut k = 1;
    while x != 1 {
        x = x * a % p;
        k += 1;
    }
    k
}

/// `Cp ⋊ Cn` where the generator of `Cn` acts as `x ↦ x^a`, `a` the smallest
/// residue of multiplicative order `n` mod `p`.
pub fn zp_rtimes_zn(p: u64, n: u64) -> Result<Group> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if n <= 1 || (p - 1) % n != 0 {
        return Err(Error::InvalidParameter(format!(
            "C{p}:C{n} needs 1 < n dividing |Aut(C{p})| = {}",
            p - 1
        )));
    }
    let a = (2..p)
        .find(|&a| multiplicative_order(a, p) == n)
        .expect("the unit group mod p is cyclic");
    let base = cyclic(p as usize)?;
    let g = base.generator_indices()[0];
    let alpha = Automorphism::from_generator_images(&base, &[base.pow(g, a as usize)])?;
    semidirect_product(&base, &cyclic(n as usize)?, &[alpha])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ActionMode {
    /// No line of `Cp×Cp` is invariant; needs `q | p+1`, `q ∤ p−1`.
    Irreducible,
    /// Multiplication by a scalar of order `q`; needs `q | p−1`.
    Scalar,
}

type Matrix = [u64; 4];

fn mat_mul(x: Matrix, y: Matrix, p: u64) -> Matrix {
    [
        (x[0] * y[0] + x[1] * y[2]) % p,
        (x[0] * y[1] + x[1] * y[3]) % p,
        (x[2] * y[0] + x[3] * y[2]) % p,
        (x[2] * y[1] + x[3] * y[3]) % p,
    ]
}

fn has_order(m: Matrix, q: u64, p: u64) -> bool {
    let identity = [1, 0, 0, 1];
    if m == identity {
        return false;
    }
    let mut power = m;
    for _ in 1..q {
        power = mat_mul(power, m, p);
    }
    power == identity
}

/// First matrix (in lexicographic entry order) of prime order `q` in
/// `GL(2, p)` satisfying the mode's condition.
pub fn find_action_matrix(p: u64, q: u64, mode: ActionMode) -> Option<[u64; 4]> {
    match mode {
        ActionMode::Scalar => (2..p)
            .map(|l| [l, 0, 0, l])
            .find(|&m| has_order(m, q, p)),
        ActionMode::Irreducible => {
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            let m = [a, b, c, d];
                            let det = (a * d + p * p - b * c) % p;
                            if det == 0 || !has_order(m, q, p) {
                                continue;
                            }
                            let trace = (a + d) % p;
                            let has_eigenvalue = (0..p).any(|l| {
                                (l * l + det + p * p - trace * l % p) % p == 0
                            });
                            if !has_eigenvalue {
                                return Some(m);
                            }
                        }
                    }
                }
            }
            None
        }
    }
}

/// `(Cp × Cp) ⋊ Cq` of order `p²q`.
pub fn pxp_rtimes_zq(p: u64, q: u64, mode: ActionMode) -> Result<Group> {
    for x in [p, q] {
        if !is_prime(x) {
            return Err(Error::InvalidParameter(format!("{x} is not prime")));
        }
    }
    match mode {
        ActionMode::Irreducible if (p + 1) % q != 0 || (p - 1) % q == 0 => {
            return Err(Error::InvalidParameter(format!(
                "irreducible action of C{q} on C{p}xC{p} needs {q} | {} and {q} ∤ {}",
                p + 1,
                p - 1
            )))
        }
        ActionMode::Scalar if (p - 1) % q != 0 => {
            return Err(Error::InvalidParameter(format!(
                "scalar action of C{q} on C{p}xC{p} needs {q} | {}",
                p - 1
            )))
        }
        _ => {}
    }
    if p > MATRIX_SEARCH_MAX_P {
        return Err(Error::InvalidParameter(format!(
            "p = {p} exceeds the action search bound {MATRIX_SEARCH_MAX_P}"
        )));
    }
    let m = find_action_matrix(p, q, mode).ok_or_else(|| {
        Error::Consistency(format!("no action of order {q} on C{p}xC{p} found"))
    })?;
    let base = elementary_abelian_square(p as usize)?;
    let (e1, e2) = (base.generator_indices()[0], base.generator_indices()[1]);
    let vector = |u: u64, v: u64| base.mul(base.pow(e1, u as usize), base.pow(e2, v as usize));
    // columns of m are the images of e1 and e2
    let alpha = Automorphism::from_generator_images(&base, &[vector(m[0], m[2]), vector(m[1], m[3])])?;
    semidirect_product(&base, &cyclic(q as usize)?, &[alpha])
}

/// `2 + (2 + 1/p + 1/p²)/q`
pub fn family_closed_form(p: u64, q: u64) -> Result<Rational> {
    let p = p as i64;
    let q = q as i64;
    let inner = Rational::integer(2)
        .checked_add(Rational::new(1, p)?)?
        .checked_add(Rational::new(1, p.checked_mul(p).ok_or(Error::Overflow("p²"))?)?)?;
    Rational::integer(2).checked_add(inner.checked_div(Rational::integer(q))?)
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub q: u64,
    pub p: u64,
    pub order: u64,
    pub closed_form: Rational,
    /// Present when the member was small enough to build.
    pub group: Option<Arc<Group>>,
}

/// One member per odd prime `q = 3, 5, 7, …`, paired with the smallest prime
/// `p` such that `q | p+1`.
pub fn family_gn(count: usize) -> Result<Vec<FamilyMember>> {
    family_gn_bounded(count, limits().max_lattice_order as u64)
}

pub fn family_gn_bounded(count: usize, materialize_up_to: u64) -> Result<Vec<FamilyMember>> {
    if count == 0 {
        return Err(Error::InvalidParameter("family count must be at least 1".into()));
    }
    let odd_primes = (3u64..).filter(|&x| is_prime(x)).take(count);
    odd_primes
        .map(|q| {
            let p = (2u64..)
                .find(|&p| is_prime(p) && (p + 1) % q == 0)
                .expect("infinitely many primes p ≡ -1 mod q");
            let order = p * p * q;
            let group = if order <= materialize_up_to && p <= MATRIX_SEARCH_MAX_P {
                Some(Arc::new(pxp_rtimes_zq(p, q, ActionMode::Irreducible)?))
            } else {
                None
            };
            Ok(FamilyMember {
                q,
                p,
                order,
                closed_form: family_closed_form(p, q)?,
                group,
            })
        })
        .collect()
}

fn parse_count(input: &str, digits: &str) -> Result<usize> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(input, format!("expected a number, found {digits:?}")));
    }
    let n: usize = digits
        .parse()
        .map_err(|_| Error::parse(input, "number too large"))?;
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{input}: parameter must be positive")));
    }
    Ok(n)
}

fn prime_square_root(input: &str, n: usize) -> Result<u64> {
    let r = (n as f64).sqrt().round() as u64;
    if r * r != n as u64 || !is_prime(r) {
        return Err(Error::InvalidParameter(format!(
            "{input}: E needs the square of a prime, got {n}"
        )));
    }
    Ok(r)
}

fn build_atom(expr: &str, atom: &str) -> Result<Group> {
    match atom {
        "Q8" => return quaternion(),
        "A4" => return alternating4(),
        "S3" => return symmetric(3),
        "S4" => return symmetric(4),
        "F8" => return frobenius_f8(),
        "F20" => return zp_rtimes_zn(5, 4),
        _ => {}
    }
    if let Some((left, right)) = atom.split_once(':') {
        let n = right
            .strip_prefix('C')
            .ok_or_else(|| Error::parse(expr, format!("expected C<n> after ':' in {atom:?}")))?;
        let n = parse_count(expr, n)? as u64;
        if let Some(p) = left.strip_prefix('C') {
            return zp_rtimes_zn(parse_count(expr, p)? as u64, n);
        }
        if let Some(pp) = left.strip_prefix('E') {
            let p = prime_square_root(expr, parse_count(expr, pp)?)?;
            return pxp_rtimes_zq(p, n, ActionMode::Irreducible);
        }
        return Err(Error::parse(expr, format!("unknown semidirect product {atom:?}")));
    }
    if let Some(n) = atom.strip_prefix("Dic") {
        return dicyclic(parse_count(expr, n)?);
    }
    if let Some(n) = atom.strip_prefix('D') {
        return dihedral(parse_count(expr, n)?);
    }
    if let Some(n) = atom.strip_prefix('C') {
        return cyclic(parse_count(expr, n)?);
    }
    if let Some(n) = atom.strip_prefix('E') {
        let p = prime_square_root(expr, parse_count(expr, n)?)?;
        return elementary_abelian_square(p as usize);
    }
    Err(Error::parse(expr, format!("unknown group {atom:?}")))
}

/// Builds the group named by `expr`, e.g. `"C2xC4"`, `"C7:C3"`, `"E25:C3"`.
pub fn build(expr: &str) -> Result<Group> {
    if expr.is_empty() {
        return Err(Error::parse(expr, "empty expression"));
    }
    let mut factors = expr.split('x');
    let first = factors.next().expect("split yields at least one piece");
    let mut acc = build_factor(expr, first)?;
    for atom in factors {
        acc = direct_product(&acc, &build_factor(expr, atom)?)?;
    }
    Ok(acc)
}

fn build_factor(expr: &str, atom: &str) -> Result<Group> {
    if atom.is_empty() {
        return Err(Error::parse(expr, "empty factor"));
    }
    build_atom(expr, atom)
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<Group>,
    pub order: usize,
    pub provenance: String,
}

impl CatalogEntry {
    fn from_recipe(expr: &str, description: &str) -> Result<CatalogEntry> {
        let group = build(expr)?;
        Ok(CatalogEntry {
            name: expr.to_string(),
            order: group.order(),
            group: Arc::new(group),
            provenance: format!("build({expr:?}): {description}"),
        })
    }
}

/// Number of isomorphism classes of groups of order 1..=15, from the standard
/// classification of groups of small order (external data).
pub const CLASSIFICATION_COUNTS: [usize; 15] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1];

pub const CATALOG_MAX_ORDER: usize = 15;

const CATALOG_RECIPES: &[(&str, &str)] = &[
    ("C1", "trivial group"),
    ("C2", "cyclic, generated by a 2-cycle"),
    ("C3", "cyclic, generated by a 3-cycle"),
    ("C4", "cyclic, generated by a 4-cycle"),
    ("C2xC2", "Klein four-group as a direct product"),
    ("C5", "cyclic, generated by a 5-cycle"),
    ("C6", "cyclic, generated by a 6-cycle"),
    ("S3", "symmetric group on 3 points"),
    ("C7", "cyclic, generated by a 7-cycle"),
    ("C8", "cyclic, generated by an 8-cycle"),
    ("C2xC4", "direct product"),
    ("C2xC2xC2", "elementary abelian of order 8"),
    ("D4", "symmetries of a square"),
    ("Q8", "quaternion group, regular representation"),
    ("C9", "cyclic, generated by a 9-cycle"),
    ("C3xC3", "elementary abelian of order 9"),
    ("C10", "cyclic, generated by a 10-cycle"),
    ("D5", "symmetries of a pentagon"),
    ("C11", "cyclic, generated by an 11-cycle"),
    ("C12", "cyclic, generated by a 12-cycle"),
    ("C2xC6", "direct product"),
    ("D6", "symmetries of a hexagon"),
    ("A4", "alternating group on 4 points"),
    ("Dic3", "dicyclic group of order 12, regular representation"),
    ("C13", "cyclic, generated by a 13-cycle"),
    ("C14", "cyclic, generated by a 14-cycle"),
    ("D7", "symmetries of a heptagon"),
    ("C15", "cyclic, generated by a 15-cycle"),
];

/// Every group of order at most `max_order` (≤ 15), one per isomorphism
/// class. Counts and pairwise non-isomorphism are checked on every call.
pub fn catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    if max_order > CATALOG_MAX_ORDER {
        return Err(Error::Domain(format!(
            "catalog covers orders up to {CATALOG_MAX_ORDER}, requested {max_order}"
        )));
    }
    let mut entries = Vec::new();
    for (expr, description) in CATALOG_RECIPES {
        let entry = CatalogEntry::from_recipe(expr, description)?;
        if entry.order <= max_order {
            entries.push(entry);
        }
    }
    entries.sort_by_key(|e| e.order);
    for order in 1..=max_order {
        let slice: Vec<&CatalogEntry> = entries.iter().filter(|e| e.order == order).collect();
        if slice.len() != CLASSIFICATION_COUNTS[order - 1] {
            return Err(Error::Consistency(format!(
                "catalog has {} groups of order {order}, expected {}",
                slice.len(),
                CLASSIFICATION_COUNTS[order - 1]
            )));
        }
        for (i, a) in slice.iter().enumerate() {
            for b in &slice[i + 1..] {
                if are_isomorphic(&a.group, &b.group)? {
                    return Err(Error::Consistency(format!(
                        "catalog entries {} and {} are isomorphic",
                        a.name, b.name
                    )));
                }
            }
        }
    }
    Ok(entries)
}

const NAMED_RECIPES: &[(&str, &str)] = &[
    ("S4", "symmetric group on 4 points"),
    ("F20", "Frobenius group C5:C4"),
    ("C7:C3", "non-abelian group of order 21"),
    ("C7:C6", "Frobenius group of order 42"),
    ("F8", "Frobenius group (C2)^3:C7 of order 56"),
    ("E25:C3", "(C5xC5):C3 with irreducible action"),
];

/// Groups beyond the catalog that take part in every scan.
pub fn named_constructions() -> Result<Vec<CatalogEntry>> {
    NAMED_RECIPES
        .iter()
        .map(|(expr, description)| CatalogEntry::from_recipe(expr, description))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parser_accepts_the_grammar() {
        for (expr, order) in [
            ("C12", 12),
            ("C2xC4", 8),
            ("Q8", 8),
            ("D4", 8),
            ("A4", 12),
            ("S4", 24),
            ("S3", 6),
            ("F8", 56),
            ("F20", 20),
            ("C7:C3", 21),
            ("C7:C6", 42),
            ("E25:C3", 75),
            ("E4", 4),
            ("Dic3", 12),
            ("D1", 2),
            ("D2", 4),
            ("C2xC2xC3", 12),
            ("Q8xC3", 24),
            ("C1", 1),
        ] {
            assert_eq!(build(expr).unwrap().order(), order, "{expr}");
        }
    }

    #[test]
    fn parser_rejects_bad_input() {
        for expr in ["", "C", "Cx", "xC2", "C2x", "G5", "C-1", "C 2", "E8", "E6", "C4:C2", "C7:D3", "X7:C3"] {
            assert!(build(expr).is_err(), "{expr:?} should fail");
        }
        assert!(matches!(build("C0"), Err(Error::InvalidParameter(_))));
        assert!(matches!(build("C5:C3"), Err(Error::InvalidParameter(_))));
        assert!(matches!(build("Q9"), Err(Error::Parse { .. })));
    }

    #[test]
    fn build_is_deterministic() {
        for expr in ["C7:C6", "F8", "Dic3xC5"] {
            assert_eq!(build(expr).unwrap().elements(), build(expr).unwrap().elements());
        }
    }

    #[test]
    fn f8_shape() {
        let f8 = build("F8").unwrap();
        let stats = f8.order_statistics();
        let count = |k| stats.iter().filter(|&&o| o == k).count();
        assert_eq!((count(1), count(2), count(7)), (1, 7, 48));
    }

    #[test]
    fn small_semidirect_products() {
        assert!(are_isomorphic(&zp_rtimes_zn(3, 2).unwrap(), &symmetric(3).unwrap()).unwrap());
        let g21 = zp_rtimes_zn(7, 3).unwrap();
        assert_eq!(g21.order(), 21);
        assert!(!g21.is_abelian());
        assert!(zp_rtimes_zn(7, 4).is_err());
        assert!(zp_rtimes_zn(8, 2).is_err());
    }

    #[test]
    fn pxp_modes() {
        let a4 = pxp_rtimes_zq(2, 3, ActionMode::Irreducible).unwrap();
        assert!(are_isomorphic(&a4, &alternating4().unwrap()).unwrap());
        assert_eq!(pxp_rtimes_zq(5, 2, ActionMode::Scalar).unwrap().order(), 50);
        assert!(pxp_rtimes_zq(5, 2, ActionMode::Irreducible).is_err());
        assert!(pxp_rtimes_zq(7, 3, ActionMode::Irreducible).is_err());
        assert!(pxp_rtimes_zq(5, 3, ActionMode::Scalar).is_err());
        assert!(pxp_rtimes_zq(53, 3, ActionMode::Irreducible).is_err());
        let m = find_action_matrix(5, 3, ActionMode::Irreducible).unwrap();
        assert_eq!(m, [0, 1, 4, 4]);
    }

    #[test]
    fn family_primes_and_closed_forms() {
        let fam = family_gn_bounded(5, 400).unwrap();
        let pairs: Vec<(u64, u64)> = fam.iter().map(|m| (m.q, m.p)).collect();
        assert_eq!(pairs, vec![(3, 2), (5, 19), (7, 13), (11, 43), (13, 103)]);
        assert_eq!(fam[0].closed_form, rat!(35, 12));
        // 2 + (2·361 + 19 + 1)/(361·5)
        assert_eq!(fam[1].closed_form, rat!(2 * 1805 + 742, 1805));
        assert!(fam[0].group.is_some());
        assert!(fam[1].group.is_none());
        assert!(family_gn(0).is_err());
    }

    #[test]
    fn catalog_slices() {
        let eight = catalog(8).unwrap();
        assert_eq!(eight.len(), 14);
        let names: Vec<&str> = eight.iter().filter(|e| e.order == 8).map(|e| e.name.as_str()).collect();
        assert_eq!(names, vec!["C8", "C2xC4", "C2xC2xC2", "D4", "Q8"]);
        assert_eq!(catalog(1).unwrap().len(), 1);
        let twelve: Vec<String> = catalog(12)
            .unwrap()
            .into_iter()
            .filter(|e| e.order == 12)
            .map(|e| e.name)
            .collect();
        assert_eq!(twelve, vec!["C12", "C2xC6", "D6", "A4", "Dic3"]);
        assert_eq!(catalog(15).unwrap().len(), 28);
        assert!(catalog(16).is_err());
    }
}
