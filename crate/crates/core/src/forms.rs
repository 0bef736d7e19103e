// SPDX-License-Identifier: Apache-2.0
//! Common interface of graded-commutative differential form algebras.

use crate::rational::Q;
use std::fmt::Debug;

pub trait DgForm: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, s: &Q) -> Self;
    fn wedge(&self, o: &Self) -> Self;
    fn d(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Homogeneous component of the given degree.
    fn part(&self, deg: usize) -> Self;
    /// Top degree of the ambient algebra.
    fn ambient_dim(&self) -> usize;
    /// Degrees with a nonzero component, ascending.
    fn degrees(&self) -> Vec<usize>;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.times(&-Q::from_integer(1.into())))
    }

    fn neg(&self) -> Self {
        self.times(&-Q::from_integer(1.into()))
    }

    /// Sum of components in odd (`true`) or even degrees.
    fn parity_part(&self, odd: bool) -> Self {
        self.degrees()
            .into_iter()
            .filter(|d| (d % 2 == 1) == odd)
            .fold(self.zero_like(), |acc, d| acc.plus(&self.part(d)))
    }
}
