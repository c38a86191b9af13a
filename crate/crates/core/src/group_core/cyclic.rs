use super::{Element, FiniteGroup};

/// Integers mod `n` under addition.
#[derive(Clone, Debug)]
pub struct CyclicGroup {
    n: usize,
}

impl CyclicGroup {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        CyclicGroup { n }
    }
}

impl FiniteGroup for CyclicGroup {
    fn order(&self) -> usize {
        self.n
    }

    fn multiply(&self, a: Element, b: Element) -> Element {
        (a + b) % self.n
    }

    fn inverse(&self, a: Element) -> Element {
        (self.n - a) % self.n
    }

    fn descriptor(&self) -> String {
        format!("cyclic({})", self.n)
    }

    fn generators(&self) -> Option<Vec<Element>> {
        Some(if self.n > 1 { vec![1] } else { Vec::new() })
    }
}
