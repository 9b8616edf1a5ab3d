use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::{field_context, FieldContext, FieldElement};
use crate::error::{Error, Result};
use crate::perm::{closure, closure_cap, GroupView, Permutation};

/// A 2x2 matrix `[[a, b], [c, d]]` over a [`FieldContext`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix2 {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    pub d: FieldElement,
}

impl Matrix2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Matrix2::scalar(FieldElement::ONE)
    }

    pub fn scalar(x: FieldElement) -> Self {
        Matrix2::new(x, FieldElement::ZERO, FieldElement::ZERO, x)
    }

    pub fn det(&self, f: &FieldContext) -> FieldElement {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn mul(&self, other: &Matrix2, f: &FieldContext) -> Matrix2 {
        let dot = |x, y, z, w| f.add(f.mul(x, y), f.mul(z, w));
        Matrix2 {
            a: dot(self.a, other.a, self.b, other.c),
            b: dot(self.a, other.b, self.b, other.d),
            c: dot(self.c, other.a, self.d, other.c),
            d: dot(self.c, other.b, self.d, other.d),
        }
    }

    pub fn is_scalar(&self) -> bool {
        self.b == FieldElement::ZERO && self.c == FieldElement::ZERO && self.a == self.d
    }

    /// Row vector `(x, y)` times this matrix.
    pub fn act_on_row(&self, x: FieldElement, y: FieldElement, f: &FieldContext) -> (FieldElement, FieldElement) {
        (
            f.add(f.mul(x, self.a), f.mul(y, self.c)),
            f.add(f.mul(x, self.b), f.mul(y, self.d)),
        )
    }

    /// The four entries as coefficient sequences (leading coefficient first).
    pub fn coefficients(&self, f: &FieldContext) -> [Vec<u64>; 4] {
        [
            f.coefficients(self.a),
            f.coefficients(self.b),
            f.coefficients(self.c),
            f.coefficients(self.d),
        ]
    }
}

/// All invertible 2x2 matrices over `GF(q)` in lexicographic `(a, b, c, d)` order.
#[derive(Clone, Debug)]
pub struct Gl2Group {
    pub q: u64,
    pub field: FieldContext,
    pub matrices: Vec<Matrix2>,
    pub index: HashMap<Matrix2, usize>,
}

impl Gl2Group {
    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.matrices[i].mul(&self.matrices[j], &self.field)]
    }

    pub fn matrix_order(&self, m: &Matrix2) -> usize {
        let id = Matrix2::identity();
        let mut x = *m;
        let mut k = 1;
        while x != id {
            x = x.mul(m, &self.field);
            k += 1;
        }
        k
    }
}

pub fn gl2_group(q: u64) -> Result<Gl2Group> {
    if q < 3 {
        return Err(Error::QTooSmall(q));
    }
    let field = field_context(q)?;
    let els: Vec<FieldElement> = field.elements().collect();
    let mut matrices = Vec::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                for &d in &els {
                    let m = Matrix2::new(a, b, c, d);
                    if m.det(&field) != FieldElement::ZERO {
                        matrices.push(m);
                    }
                }
            }
        }
    }
    let index = matrices.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    Ok(Gl2Group {
        q,
        field,
        matrices,
        index,
    })
}

/// First matrix in enumeration order of multiplicative order `q^2 - 1`.
pub fn singer_element(q: u64) -> Result<Matrix2> {
    let g = gl2_group(q)?;
    find_singer(&g)
}

pub(crate) fn find_singer(g: &Gl2Group) -> Result<Matrix2> {
    let target = (g.q * g.q - 1) as usize;
    g.matrices
        .iter()
        .find(|m| g.matrix_order(m) == target)
        .copied()
        .ok_or(Error::SingerNotFound(g.q))
}

/// `GL(2,q)` as a permutation group on the `q^2 - 1` nonzero row vectors,
/// with the translation between matrices and group elements.
#[derive(Clone, Debug)]
pub struct Gl2View {
    pub gl2: Gl2Group,
    pub group: Arc<GroupView>,
    /// Group-element index of each matrix (matrix enumeration order).
    pub element_of_matrix: Vec<usize>,
    /// Matrix index of each group element.
    pub matrix_of_element: Vec<usize>,
}

impl Gl2View {
    pub fn element(&self, m: &Matrix2) -> usize {
        self.element_of_matrix[self.gl2.index[m]]
    }

    pub fn matrix(&self, element: usize) -> Matrix2 {
        self.gl2.matrices[self.matrix_of_element[element]]
    }
}

fn vector_permutation(m: &Matrix2, f: &FieldContext) -> Permutation {
    let q = f.order();
    let images: Vec<usize> = (1..q * q)
        .map(|v| {
            let (x, y) = (f.element(v / q), f.element(v % q));
            let (x2, y2) = m.act_on_row(x, y, f);
            x2.value() * q + y2.value() - 1
        })
        .collect();
    Permutation::from_images(images).expect("invertible matrices permute nonzero vectors")
}

/// Builds the permutation view of `GL(2,q)`.
///
/// Generated by `diag(w, 1)` for a primitive `w` and the two unit
/// transvections; the closure is checked against the full enumeration.
pub fn gl2_permutation_view(q: u64) -> Result<Gl2View> {
    let gl2 = gl2_group(q)?;
    let f = &gl2.field;
    let w = f.primitive_element();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let gens = [
        Matrix2::new(w, zero, zero, one),
        Matrix2::new(one, one, zero, one),
        Matrix2::new(one, zero, one, one),
    ];
    let perms: Vec<Permutation> = gens.iter().map(|m| vector_permutation(m, f)).collect();
    let group = closure(&perms, closure_cap())?;
    if group.order() != gl2.order() {
        return Err(Error::CountMismatch {
            what: format!("closure of GL(2,{q}) generators"),
            expected: gl2.order().to_string(),
            found: group.order().to_string(),
        });
    }
    let element_of_matrix: Vec<usize> = gl2
        .matrices
        .iter()
        .map(|m| {
            group
                .index_of(&vector_permutation(m, f))
                .ok_or(Error::ElementNotInGroup)
        })
        .collect::<Result<_>>()?;
    let mut matrix_of_element = vec![0; group.order()];
    for (mi, &e) in element_of_matrix.iter().enumerate() {
        matrix_of_element[e] = mi;
    }
    Ok(Gl2View {
        gl2,
        group: Arc::new(group),
        element_of_matrix,
        matrix_of_element,
    })
}
