use super::{Element, FiniteGroup};

/// Symmetries of a regular `n`-gon, order `2n`. The element `r^k s^e` is
/// encoded as `e * n + k`.
#[derive(Clone, Debug)]
pub struct DihedralGroup {
    n: usize,
}

impl DihedralGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        DihedralGroup { n }
    }

    fn split(&self, x: Element) -> (usize, usize) {
        (x % self.n, x / self.n)
    }
}

impl FiniteGroup for DihedralGroup {
    fn order(&self) -> usize {
        2 * self.n
    }

    // s r^b = r^-b s
    fn multiply(&self, a: Element, b: Element) -> Element {
        let n = self.n;
        let (k, e) = self.split(a);
        let (l, f) = self.split(b);
        let rot = if e == 0 { (k + l) % n } else { (k + n - l) % n };
        (e ^ f) * n + rot
    }

    fn inverse(&self, a: Element) -> Element {
        let (k, e) = self.split(a);
        if e == 1 {
            a
        } else {
            (self.n - k) % self.n
        }
    }

    fn descriptor(&self) -> String {
        format!("dihedral({})", self.n)
    }

    fn generators(&self) -> Option<Vec<Element>> {
        let mut gens = vec![self.n];
        if self.n > 1 {
            gens.insert(0, 1);
        }
        Some(gens)
    }
}

/// Dicyclic group `<a, b | a^2n = 1, b^2 = a^n, b a b^-1 = a^-1>` of order
/// `4n`. The element `a^k b^e` is encoded as `e * 2n + k`.
#[derive(Clone, Debug)]
pub struct DicyclicGroup {
    n: usize,
}

impl DicyclicGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        DicyclicGroup { n }
    }

    fn split(&self, x: Element) -> (usize, usize) {
        (x % (2 * self.n), x / (2 * self.n))
    }
}

impl FiniteGroup for DicyclicGroup {
    fn order(&self) -> usize {
        4 * self.n
    }

    fn multiply(&self, a: Element, b: Element) -> Element {
        let m = 2 * self.n;
        let (k, e) = self.split(a);
        let (l, f) = self.split(b);
        let mut rot = if e == 0 { k + l } else { k + m - l };
        if e == 1 && f == 1 {
            rot += self.n;
        }
        (e ^ f) * m + rot % m
    }

    fn inverse(&self, a: Element) -> Element {
        let m = 2 * self.n;
        let (k, e) = self.split(a);
        if e == 0 {
            (m - k) % m
        } else {
            m + (k + self.n) % m
        }
    }

    fn descriptor(&self) -> String {
        format!("dicyclic({})", self.n)
    }

    fn generators(&self) -> Option<Vec<Element>> {
        Some(vec![1, 2 * self.n])
    }
}
