use nalgebra::DMatrix;

use crate::error::SymbolError;
use crate::symbol::{SymMatrix, C64};

/// `A = minus · diag(t^{d_1}, ..., t^{d_n}) · plus`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFactorization {
    pub minus: SymMatrix,
    pub d: Vec<i32>,
    pub plus: SymMatrix,
}

impl MatrixFactorization {
    pub fn size(&self) -> usize {
        self.d.len()
    }

    pub fn eval(&self, t: C64) -> DMatrix<C64> {
        let mut m = self.minus.eval_at(t);
        for (j, &k) in self.d.iter().enumerate() {
            let s = t.powi(k);
            m.column_mut(j).iter_mut().for_each(|x| *x *= s);
        }
        m * self.plus.eval_at(t)
    }

    /// The product `minus · diag(t^d) · plus` as a symbol matrix.
    pub fn product(&self) -> Result<SymMatrix, SymbolError> {
        self.minus.mul(&SymMatrix::diag_powers(&self.d))?.mul(&self.plus)
    }

    /// Partial indices in ascending order.
    pub fn sorted_indices(&self) -> Vec<i32> {
        let mut d = self.d.clone();
        d.sort_unstable();
        d
    }
}
