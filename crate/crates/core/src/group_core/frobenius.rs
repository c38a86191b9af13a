use super::{Element, FiniteGroup};
use crate::error::Result;
use crate::finite_field::{FieldElement, FiniteField};

/// The affine group `x -> g^k x + a` over GF(q), q = p^r: the semidirect
/// product of the additive group (kernel) by the multiplicative group
/// (complement), with `g` the field's primitive element.
///
/// The pair `(a, k)` is encoded as `enc(a) * (q - 1) + k` and
/// `(a, k)(b, l) = (a + g^k b, k + l)`.
#[derive(Clone, Debug)]
pub struct FrobeniusFieldGroup {
    field: FiniteField,
    units: usize,
    /// `exp[k] = g^k` for `k < q - 1`.
    exp: Vec<u32>,
    /// `log[g^k] = k`; entry 0 unused.
    log: Vec<u32>,
    /// Field addition table for odd characteristic and small fields.
    add: Option<Vec<u32>>,
}

const ADD_TABLE_LIMIT: u32 = 1 << 10;

impl FrobeniusFieldGroup {
    pub fn new(p: u32, r: u32) -> Result<Self> {
        let field = FiniteField::new(p, r)?;
        let q = field.size();
        let units = (q - 1) as usize;
        let g = field.primitive_element();
        let mut exp = Vec::with_capacity(units);
        let mut log = vec![0u32; q as usize];
        let mut acc = field.one();
        for k in 0..units {
            exp.push(acc.encoding());
            log[acc.encoding() as usize] = k as u32;
            acc = field.mul(acc, g);
        }
        let add = (p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            (0..q)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .map(|(a, b)| {
                    field
                        .add(field.element(a).unwrap(), field.element(b).unwrap())
                        .encoding()
                })
                .collect()
        });
        Ok(FrobeniusFieldGroup {
            field,
            units,
            exp,
            log,
            add,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn encode(&self, a: FieldElement, k: usize) -> Element {
        a.encoding() as usize * self.units + k % self.units
    }

    pub fn decode(&self, x: Element) -> (FieldElement, usize) {
        let a = self.field.element((x / self.units) as u32).unwrap();
        (a, x % self.units)
    }

    /// Kernel `{(a, 0)}`, isomorphic to the additive group of the field.
    pub fn kernel_elements(&self) -> Vec<Element> {
        self.field.elements().map(|a| self.encode(a, 0)).collect()
    }

    /// Complement `{(0, k)}`, cyclic of order `q - 1`.
    pub fn complement_elements(&self) -> Vec<Element> {
        (0..self.units).collect()
    }

    /// Generator `(0, 1)` of the complement.
    pub fn complement_generator(&self) -> Element {
        1 % self.units
    }

    fn scale(&self, k: usize, b: u32) -> u32 {
        if b == 0 {
            0
        } else {
            self.exp[(k + self.log[b as usize] as usize) % self.units]
        }
    }

    fn add_enc(&self, a: u32, b: u32) -> u32 {
        if self.field.characteristic() == 2 {
            return a ^ b;
        }
        match &self.add {
            Some(t) => t[(a * self.field.size() + b) as usize],
            None => self
                .field
                .add(FieldElement::from_raw(a), FieldElement::from_raw(b))
                .encoding(),
        }
    }
}

impl FiniteGroup for FrobeniusFieldGroup {
    fn order(&self) -> usize {
        self.field.size() as usize * self.units
    }

    fn multiply(&self, x: Element, y: Element) -> Element {
        let (a, k) = ((x / self.units) as u32, x % self.units);
        let (b, l) = ((y / self.units) as u32, y % self.units);
        let c = self.add_enc(a, self.scale(k, b));
        c as usize * self.units + (k + l) % self.units
    }

    // (a, k)^-1 = (-g^-k a, -k)
    fn inverse(&self, x: Element) -> Element {
        let (a, k) = ((x / self.units) as u32, x % self.units);
        let back = (self.units - k) % self.units;
        let scaled = FieldElement::from_raw(self.scale(back, a));
        self.field.neg(scaled).encoding() as usize * self.units + back
    }

    fn descriptor(&self) -> String {
        format!(
            "frobenius({},{})",
            self.field.characteristic(),
            self.field.degree()
        )
    }

    fn generators(&self) -> Option<Vec<Element>> {
        // (1, 0) and (0, 1); conjugating (1, 0) by powers of (0, 1) reaches
        // every nonzero translation.
        let mut gens = vec![self.units];
        if self.units > 1 {
            gens.insert(0, 1);
        }
        Some(gens)
    }
}
