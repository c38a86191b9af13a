use super::{generating_set, Element, FiniteGroup, GroupRef};
use crate::error::{Error, Result};

/// Direct product with mixed-radix encoding; the first factor is the most
/// significant digit, so the tuple `(e_0, ..., e_s)` is encoded as
/// `((e_0 * n_1 + e_1) * n_2 + ...)`.
#[derive(Clone, Debug)]
pub struct DirectProductGroup {
    factors: Vec<GroupRef>,
    strides: Vec<usize>,
    order: usize,
    label: Option<String>,
}

impl DirectProductGroup {
    pub fn new(factors: Vec<GroupRef>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("direct product needs at least one factor".into()));
        }
        let mut strides = vec![1usize; factors.len()];
        let mut order = 1usize;
        for (i, f) in factors.iter().enumerate().rev() {
            strides[i] = order;
            order = order.checked_mul(f.order()).ok_or_else(|| {
                Error::InvalidArgument("direct product order overflows".into())
            })?;
        }
        Ok(DirectProductGroup {
            factors,
            strides,
            order,
            label: None,
        })
    }

    pub fn with_label(factors: Vec<GroupRef>, label: String) -> Result<Self> {
        let mut g = Self::new(factors)?;
        g.label = Some(label);
        Ok(g)
    }

    pub fn factors(&self) -> &[GroupRef] {
        &self.factors
    }

    pub fn pack(&self, components: &[Element]) -> Result<Element> {
        if components.len() != self.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} components, got {}",
                self.factors.len(),
                components.len()
            )));
        }
        let mut x = 0;
        for ((&c, f), &s) in components.iter().zip(&self.factors).zip(&self.strides) {
            super::check_element(f.as_ref(), c)?;
            x += c * s;
        }
        Ok(x)
    }

    pub fn unpack(&self, x: Element) -> Vec<Element> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(f, &s)| (x / s) % f.order())
            .collect()
    }

    /// Embeds an element of factor `i` as a tuple with identities elsewhere.
    pub fn embed(&self, i: usize, x: Element) -> Element {
        x * self.strides[i]
    }
}

impl FiniteGroup for DirectProductGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn multiply(&self, mut a: Element, mut b: Element) -> Element {
        let mut out = 0;
        let mut place = 1;
        for f in self.factors.iter().rev() {
            let n = f.order();
            out += f.multiply(a % n, b % n) * place;
            a /= n;
            b /= n;
            place *= n;
        }
        out
    }

    fn inverse(&self, mut a: Element) -> Element {
        let mut out = 0;
        let mut place = 1;
        for f in self.factors.iter().rev() {
            let n = f.order();
            out += f.inverse(a % n) * place;
            a /= n;
            place *= n;
        }
        out
    }

    fn descriptor(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => self
                .factors
                .iter()
                .map(|f| f.descriptor())
                .collect::<Vec<_>>()
                .join(" x "),
        }
    }

    fn generators(&self) -> Option<Vec<Element>> {
        let mut gens = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            gens.extend(generating_set(f.as_ref()).into_iter().map(|g| self.embed(i, g)));
        }
        Some(gens)
    }
}
