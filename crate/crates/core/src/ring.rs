use crate::field::{Field, FieldElement};

/// A commutative ring receiving the constants of some base field.
///
/// Circuit evaluation is generic over this trait so the same gate list can
/// be run on field points, polynomial points and Laurent points.
pub trait Ring {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a base-field constant.
    fn constant(&self, c: FieldElement) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

impl Ring for Field {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        Field::zero(self)
    }
    fn one(&self) -> FieldElement {
        Field::one(self)
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::add(self, *a, *b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::mul(self, *a, *b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        Field::neg(self, *a)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        Field::sub(self, *a, *b)
    }
    fn constant(&self, c: FieldElement) -> FieldElement {
        c
    }
}
