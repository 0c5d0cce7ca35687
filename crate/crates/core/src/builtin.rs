//! Named group constructions and a small expression language over them.
//!
//! Expressions are a name, optionally followed by a parenthesised argument
//! list. Arguments are integers, bracketed integer lists (matrices, given
//! row by row) or nested expressions:
//!
//! ```text
//! direct(symmetric(3), cyclic(4))
//! affine(3, 2, [0,2,1,0], [1,1,1,2])
//! cyclic_ext(7, 3, 2)
//! ```

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::group::{direct_product, semidirect_product, semidirect_product_extended, Group};
use crate::perm::Permutation;

/// Names accepted by [`builtin_group`], with their argument shapes.
pub const BUILTINS: &[(&str, &str)] = &[
    ("trivial", ""),
    ("cyclic", "n"),
    ("dihedral", "n  (order 2n)"),
    ("dicyclic", "n  (order 4n)"),
    ("quaternion", ""),
    ("symmetric", "n"),
    ("alternating", "n"),
    ("elementary_abelian", "p, k"),
    ("sl", "2, p"),
    ("gl", "2, p"),
    ("linear", "p, k, [matrix]..."),
    ("affine", "p, k, [matrix]..."),
    (
        "affine_ext",
        "p, k, group, [matrix]...  (one matrix per generator)",
    ),
    ("cyclic_ext", "m, n, r  (C_m by C_n acting as x -> x^r)"),
    ("direct", "group, group..."),
    ("pauli", ""),
];

enum Arg {
    Int(usize),
    List(Vec<usize>),
    Group(Group),
}

impl Arg {
    fn describe(&self) -> &'static str {
        match self {
            Arg::Int(_) => "integer",
            Arg::List(_) => "list",
            Arg::Group(_) => "group",
        }
    }
}

/// Builds the group described by `expr`.
pub fn builtin_group(expr: &str) -> Result<Group> {
    let mut p = Parser {
        src: expr.as_bytes(),
        pos: 0,
    };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at column {} of '{}'",
            self.pos + 1,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Arg::Int(self.int()?)),
            Some(b'[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() != Some(b']') {
                    loop {
                        items.push(self.int()?);
                        if self.peek() == Some(b',') {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(b']')?;
                Ok(Arg::List(items))
            }
            _ => Ok(Arg::Group(self.group()?)),
        }
    }

    fn group(&mut self) -> Result<Group> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();
        if name.is_empty() {
            return Err(self.error("expected a group name"));
        }
        let mut args = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                loop {
                    args.push(self.arg()?);
                    if self.peek() == Some(b',') {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
            }
            self.expect(b')')?;
        }
        construct(&name, args)
    }
}

fn ints<const N: usize>(name: &str, args: &[Arg]) -> Result<[usize; N]> {
    if args.len() != N {
        return Err(Error::InvalidArgument(format!(
            "{name} takes {N} integer arguments, got {}",
            args.len()
        )));
    }
    let mut out = [0; N];
    for (slot, a) in out.iter_mut().zip(args) {
        match a {
            Arg::Int(v) => *slot = *v,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "{name}: expected integer, got {}",
                    other.describe()
                )))
            }
        }
    }
    Ok(out)
}

fn lists(name: &str, args: &[Arg]) -> Result<Vec<Vec<usize>>> {
    args.iter()
        .map(|a| match a {
            Arg::List(v) => Ok(v.clone()),
            other => Err(Error::InvalidArgument(format!(
                "{name}: expected matrix, got {}",
                other.describe()
            ))),
        })
        .collect()
}

fn construct(name: &str, args: Vec<Arg>) -> Result<Group> {
    match name {
        "trivial" => {
            ints::<0>(name, &args)?;
            Ok(Group::trivial())
        }
        "cyclic" => cyclic(ints::<1>(name, &args)?[0]),
        "dihedral" => dihedral(ints::<1>(name, &args)?[0]),
        "dicyclic" => dicyclic(ints::<1>(name, &args)?[0]),
        "quaternion" => {
            ints::<0>(name, &args)?;
            dicyclic(2)
        }
        "symmetric" => symmetric(ints::<1>(name, &args)?[0]),
        "alternating" => alternating(ints::<1>(name, &args)?[0]),
        "elementary_abelian" => {
            let [p, k] = ints::<2>(name, &args)?;
            elementary_abelian(p, k)
        }
        "sl" | "gl" => {
            let [n, p] = ints::<2>(name, &args)?;
            if n != 2 {
                return Err(Error::InvalidArgument(format!("{name}: only dimension 2")));
            }
            let mut mats = vec![vec![1, 1, 0, 1], vec![1, 0, 1, 1]];
            if name == "gl" {
                mats.push(vec![primitive_root(p)?, 0, 0, 1]);
            }
            linear(p, 2, &mats)
        }
        "linear" | "affine" => {
            if args.len() < 2 {
                return Err(Error::InvalidArgument(format!("{name}: missing p, k")));
            }
            let [p, k] = ints::<2>(name, &args[..2])?;
            let mats = lists(name, &args[2..])?;
            if name == "linear" {
                linear(p, k, &mats)
            } else {
                affine(p, k, &mats)
            }
        }
        "affine_ext" => {
            if args.len() < 3 {
                return Err(Error::InvalidArgument(format!(
                    "{name}: missing p, k, group"
                )));
            }
            let [p, k] = ints::<2>(name, &args[..2])?;
            let Arg::Group(q) = &args[2] else {
                return Err(Error::InvalidArgument(format!(
                    "{name}: third argument is a group"
                )));
            };
            let mats = lists(name, &args[3..])?;
            affine_ext(p, k, q, &mats)
        }
        "cyclic_ext" => {
            let [m, n, r] = ints::<3>(name, &args)?;
            cyclic_ext(m, n, r)
        }
        "direct" => {
            let mut acc = Group::trivial();
            if args.is_empty() {
                return Err(Error::InvalidArgument("direct: no factors".into()));
            }
            for a in &args {
                let Arg::Group(g) = a else {
                    return Err(Error::InvalidArgument(format!(
                        "direct: expected group, got {}",
                        a.describe()
                    )));
                };
                acc = direct_product(&acc, g)?;
            }
            Ok(acc)
        }
        "pauli" => {
            ints::<0>(name, &args)?;
            pauli()
        }
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be positive")));
    }
    Ok(())
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("constructed images form a permutation")
}

pub fn cyclic(n: usize) -> Result<Group> {
    positive(n, "cyclic order")?;
    if n == 1 {
        return Ok(Group::trivial());
    }
    Group::generate(n, vec![perm((0..n).map(|i| (i + 1) % n).collect())])
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<Group> {
    positive(n, "dihedral parameter")?;
    match n {
        1 => cyclic(2),
        2 => direct_product(&cyclic(2)?, &cyclic(2)?),
        _ => Group::generate(
            n,
            vec![
                perm((0..n).map(|i| (i + 1) % n).collect()),
                perm((0..n).map(|i| (n - i) % n).collect()),
            ],
        ),
    }
}

/// Dicyclic group `<a, x | a^2n, x^2 = a^n, a^x = a^-1>` of order `4n`, on
/// its own elements `a^k x^e` numbered `k + 2n e`.
pub fn dicyclic(n: usize) -> Result<Group> {
    positive(n, "dicyclic parameter")?;
    let m = 2 * n;
    let idx = |k: usize, e: usize| k % m + m * e;
    let mut by_a = vec![0; 2 * m];
    let mut by_x = vec![0; 2 * m];
    for e in 0..2 {
        for k in 0..m {
            by_a[idx(k, e)] = if e == 0 {
                idx(k + 1, 0)
            } else {
                idx(k + m - 1, 1)
            };
            by_x[idx(k, e)] = if e == 0 { idx(k, 1) } else { idx(k + n, 0) };
        }
    }
    Group::generate(2 * m, vec![perm(by_a), perm(by_x)])
}

pub fn symmetric(n: usize) -> Result<Group> {
    positive(n, "degree")?;
    if n == 1 {
        return Ok(Group::trivial());
    }
    let mut gens = vec![perm((0..n).map(|i| (i + 1) % n).collect())];
    if n > 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(perm(t));
    }
    Group::generate(n, gens)
}

pub fn alternating(n: usize) -> Result<Group> {
    positive(n, "degree")?;
    if n < 3 {
        return Ok(Group::trivial());
    }
    let mut three: Vec<usize> = (0..n).collect();
    three[0] = 1;
    three[1] = 2;
    three[2] = 0;
    // An odd-length cycle on all points (n odd) or on all but the first.
    let skip = usize::from(n.is_multiple_of(2));
    let mut long: Vec<usize> = (0..n).collect();
    for (i, slot) in long.iter_mut().enumerate().skip(skip) {
        *slot = if i + 1 == n { skip } else { i + 1 };
    }
    Group::generate(n, vec![perm(three), perm(long)])
}

/// `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    require_prime(p)?;
    positive(k, "rank")?;
    let degree = p * k;
    let gens = (0..k)
        .map(|b| {
            perm(
                (0..degree)
                    .map(|i| {
                        if i / p == b {
                            b * p + (i % p + 1) % p
                        } else {
                            i
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Group::generate(degree, gens)
}

fn require_prime(p: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not a prime")));
    }
    Ok(())
}

fn primitive_root(p: usize) -> Result<usize> {
    require_prime(p)?;
    (1..p)
        .find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1))
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root mod {p}")))
}

fn pow_mod(b: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1 % m, |acc, _| acc * b % m)
}

/// Vectors of `F_p^k`, encoded as base-`p` digits (coordinate 0 lowest).
struct Space {
    p: usize,
    k: usize,
    size: usize,
}

impl Space {
    fn new(p: usize, k: usize) -> Result<Space> {
        require_prime(p)?;
        positive(k, "dimension")?;
        let size = p
            .checked_pow(k as u32)
            .filter(|&s| s <= 4096)
            .ok_or_else(|| Error::BoundExceeded(format!("{p}^{k} vectors")))?;
        Ok(Space { p, k, size })
    }

    fn coords(&self, mut v: usize) -> Vec<usize> {
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn encode(&self, c: &[usize]) -> usize {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    /// The linear map `v -> M v` on all vectors, `M` given row by row.
    fn apply(&self, m: &[usize]) -> Result<Vec<usize>> {
        if m.len() != self.k * self.k {
            return Err(Error::InvalidArgument(format!(
                "matrix has {} entries, expected {}",
                m.len(),
                self.k * self.k
            )));
        }
        let images: Vec<usize> = (0..self.size)
            .map(|v| {
                let c = self.coords(v);
                let w: Vec<usize> = (0..self.k)
                    .map(|i| (0..self.k).map(|j| m[i * self.k + j] * c[j]).sum::<usize>() % self.p)
                    .collect();
                self.encode(&w)
            })
            .collect();
        let mut seen = vec![false; self.size];
        for &w in &images {
            if std::mem::replace(&mut seen[w], true) {
                return Err(Error::InvalidArgument(format!("singular matrix {m:?}")));
            }
        }
        Ok(images)
    }

    /// The linear map restricted to the nonzero vectors, point `v - 1`.
    fn on_nonzero(&self, m: &[usize]) -> Result<Permutation> {
        let images = self.apply(m)?;
        Ok(perm(images[1..].iter().map(|&w| w - 1).collect()))
    }
}

/// Matrix group acting on the nonzero vectors of `F_p^k`.
pub fn linear(p: usize, k: usize, mats: &[Vec<usize>]) -> Result<Group> {
    let space = Space::new(p, k)?;
    let gens = mats
        .iter()
        .map(|m| space.on_nonzero(m))
        .collect::<Result<Vec<_>>>()?;
    Group::generate(space.size - 1, gens)
}

/// Automorphism of `elementary_abelian(p, k)` induced by a point map on
/// vectors, as a permutation of that group's sorted element list.
fn vector_action(space: &Space, elems: &[Permutation], images: &[usize]) -> Permutation {
    let vector_of = |x: &Permutation| -> usize {
        let c: Vec<usize> = (0..space.k)
            .map(|b| (x.image(b * space.p) + space.p - b * space.p) % space.p)
            .collect();
        space.encode(&c)
    };
    let mut element_of = vec![0; space.size];
    for (i, x) in elems.iter().enumerate() {
        element_of[vector_of(x)] = i;
    }
    perm(
        elems
            .iter()
            .map(|x| element_of[images[vector_of(x)]])
            .collect(),
    )
}

/// `F_p^k` extended faithfully by the matrix group the matrices generate.
pub fn affine(p: usize, k: usize, mats: &[Vec<usize>]) -> Result<Group> {
    let space = Space::new(p, k)?;
    let n = elementary_abelian(p, k)?;
    let q = linear(p, k, mats)?;
    let elems = n.elements()?;
    // Derive the action from the generators that survived identity filtering.
    let action: Vec<Permutation> = q
        .generators()
        .iter()
        .map(|g| {
            let mut images = vec![0];
            images.extend(g.images().iter().map(|&w| w as usize + 1));
            vector_action(&space, &elems, &images)
        })
        .collect();
    semidirect_product(&n, &q, &action)
}

/// `F_p^k` extended by an arbitrary group `q`, whose `i`-th generator acts by
/// the `i`-th matrix. The action need not be faithful.
pub fn affine_ext(p: usize, k: usize, q: &Group, mats: &[Vec<usize>]) -> Result<Group> {
    let space = Space::new(p, k)?;
    if mats.len() != q.generators().len() {
        return Err(Error::InvalidArgument(format!(
            "{} matrices for {} generators",
            mats.len(),
            q.generators().len()
        )));
    }
    let n = elementary_abelian(p, k)?;
    let elems = n.elements()?;
    let action = mats
        .iter()
        .map(|m| Ok(vector_action(&space, &elems, &space.apply(m)?)))
        .collect::<Result<Vec<_>>>()?;
    semidirect_product_extended(&n, q, &action)
}

/// `C_m ⋊ C_n` with the generator of `C_n` acting as `x -> x^r`. Uses the
/// regular action on `C_m` when the action is faithful.
pub fn cyclic_ext(m: usize, n: usize, r: usize) -> Result<Group> {
    positive(m, "m")?;
    positive(n, "n")?;
    if m == 1 || gcd(r, m) != 1 || pow_mod(r, n, m) != 1 {
        return Err(Error::InvalidArgument(format!(
            "x -> x^{r} does not define an action of C_{n} on C_{m}"
        )));
    }
    let cm = cyclic(m)?;
    let cn = cyclic(n)?;
    let elems = cm.elements()?;
    let gen = &cm.generators()[0];
    // Sorted position of gen^e.
    let mut pos = vec![0; m];
    for (i, x) in elems.iter().enumerate() {
        let e = (0..m).find(|&e| gen.pow(e as u64) == *x).unwrap();
        pos[e] = i;
    }
    let mut images = vec![0; m];
    for e in 0..m {
        images[pos[e]] = pos[e * r % m];
    }
    let alpha = perm(images);
    if n == 1 {
        return Ok(cm);
    }
    let faithful = (1..=n).find(|&e| pow_mod(r, e, m) == 1) == Some(n);
    if faithful {
        semidirect_product(&cm, &cn, &[alpha])
    } else {
        semidirect_product_extended(&cm, &cn, &[alpha])
    }
}

/// Single-qubit Pauli group on the eight phased basis states `i^k |j>`.
pub fn pauli() -> Result<Group> {
    let point = |k: usize, j: usize| 2 * (k % 4) + j;
    let mut x = vec![0; 8];
    let mut z = vec![0; 8];
    let mut phase = vec![0; 8];
    for k in 0..4 {
        for j in 0..2 {
            x[point(k, j)] = point(k, 1 - j);
            z[point(k, j)] = if j == 1 { point(k + 2, 1) } else { point(k, 0) };
            phase[point(k, j)] = point(k + 1, j);
        }
    }
    Group::generate(8, vec![perm(x), perm(z), perm(phase)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(expr: &str) -> u64 {
        builtin_group(expr).unwrap().order()
    }

    #[test]
    fn orders_of_named_families() {
        assert_eq!(order("trivial"), 1);
        assert_eq!(order("cyclic(12)"), 12);
        assert_eq!(order("dihedral(1)"), 2);
        assert_eq!(order("dihedral(2)"), 4);
        assert_eq!(order("dihedral(6)"), 12);
        assert_eq!(order("dicyclic(3)"), 12);
        assert_eq!(order("quaternion"), 8);
        assert_eq!(order("symmetric(5)"), 120);
        assert_eq!(order("alternating(4)"), 12);
        assert_eq!(order("alternating(6)"), 360);
        assert_eq!(order("elementary_abelian(2, 4)"), 16);
        assert_eq!(order("sl(2,3)"), 24);
        assert_eq!(order("sl(2,5)"), 120);
        assert_eq!(order("gl(2,3)"), 48);
        assert_eq!(order("pauli"), 16);
        assert_eq!(order("direct(symmetric(3), cyclic(4))"), 24);
    }

    #[test]
    fn semidirect_constructions() {
        assert_eq!(order("cyclic_ext(5,4,2)"), 20);
        assert_eq!(order("cyclic_ext(3,8,2)"), 24);
        assert_eq!(order("cyclic_ext(8,2,3)"), 16);
        assert_eq!(order("affine(3,2,[0,2,1,0],[1,1,1,2])"), 72);
        assert_eq!(order("affine(2,3,[0,0,1,1,0,1,0,1,0])"), 56);
        assert_eq!(order("affine_ext(2,2,cyclic(4),[0,1,1,0])"), 16);
        assert_eq!(order("affine_ext(3,1,dihedral(4),[2],[1])"), 24);
    }

    #[test]
    fn dicyclic_has_a_unique_involution() {
        let g = builtin_group("dicyclic(4)").unwrap();
        let involutions = g
            .elements()
            .unwrap()
            .iter()
            .filter(|x| x.order() == 2)
            .count();
        assert_eq!(involutions, 1);
        assert!(!g.is_abelian());
    }

    #[test]
    fn rejects_bad_expressions() {
        assert!(matches!(
            builtin_group("monster"),
            Err(Error::UnknownGroup(_))
        ));
        assert!(matches!(builtin_group("cyclic(3"), Err(Error::Parse(_))));
        assert!(matches!(builtin_group("cyclic(3) x"), Err(Error::Parse(_))));
        assert!(builtin_group("cyclic_ext(5,4,3)").is_ok());
        assert!(builtin_group("cyclic_ext(5,3,2)").is_err());
        assert!(builtin_group("affine(2,2,[1,1,1,1])").is_err());
        assert!(builtin_group("cyclic(65)").unwrap_err().is_bound());
    }
}
