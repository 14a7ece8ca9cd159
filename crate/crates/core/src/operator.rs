use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gmetric::Point;
use crate::scalar::Scalar;

type MapEval<S> = Arc<dyn Fn(&[S]) -> Result<Vec<S>> + Send + Sync>;

/// A self-map `T` on points of a fixed dimension.
#[derive(Clone)]
pub struct Operator<S> {
    name: String,
    dim: usize,
    eval: MapEval<S>,
}

impl<S: Scalar> Operator<S> {
    pub fn new<F>(name: impl Into<String>, dim: usize, f: F) -> Self
    where
        F: Fn(&[S]) -> Result<Vec<S>> + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            dim,
            eval: Arc::new(f),
        }
    }

    /// Lifts a scalar map to a one-dimensional operator.
    pub fn scalar<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(S) -> Result<S> + Send + Sync + 'static,
    {
        Self::new(name, 1, move |x| Ok(vec![f(x[0])?]))
    }

    pub fn identity(dim: usize) -> Self {
        Self::new("identity", dim, |x| Ok(x.to_vec()))
    }

    pub fn constant(c: Point<S>) -> Self {
        let dim = c.dim();
        Self::new(format!("constant {c}"), dim, move |_| Ok(c.coords().to_vec()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `T(x)`. A non-finite image is an [`Error::NonFinite`].
    pub fn apply(&self, x: &Point<S>) -> Result<Point<S>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let y = (self.eval)(x.coords())?;
        if y.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        Point::new(y)
    }
}

impl<S> fmt::Debug for Operator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Operator({})", self.name)
    }
}
