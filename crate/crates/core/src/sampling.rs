//! Seeded point sources.

use rand::distributions::Uniform;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gmetric::{BoxDomain, Point};
use crate::scalar::Scalar;

/// Independent reproducible stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform sampler over a finite union of boxes. Each draw picks a box with
/// equal probability and then a uniform point inside it.
pub struct BoxSampler<S: Scalar> {
    boxes: Vec<BoxDomain<S>>,
    rng: ChaCha8Rng,
}

impl<S: Scalar> BoxSampler<S> {
    pub fn new(boxes: Vec<BoxDomain<S>>, seed: u64, stream: u64) -> Result<Self> {
        if boxes.is_empty() {
            return Err(Error::Precondition("sampler needs at least one box".into()));
        }
        if let Some(b) = boxes.iter().find(|b| !b.is_bounded()) {
            return Err(Error::Precondition(format!(
                "cannot sample uniformly from unbounded box {:?}..{:?}",
                b.lower(),
                b.upper()
            )));
        }
        Ok(Self {
            boxes,
            rng: stream_rng(seed, stream),
        })
    }

    pub fn draw(&mut self) -> Point<S> {
        let b = if self.boxes.len() == 1 {
            &self.boxes[0]
        } else {
            &self.boxes[self.rng.gen_range(0..self.boxes.len())]
        };
        let coords = b
            .lower()
            .iter()
            .zip(b.upper())
            .map(|(&lo, &hi)| {
                if lo == hi {
                    lo
                } else {
                    Uniform::new_inclusive(lo, hi).sample(&mut self.rng)
                }
            })
            .collect();
        Point::from_raw(coords)
    }
}

impl<S: Scalar> Iterator for BoxSampler<S> {
    type Item = Point<S>;

    fn next(&mut self) -> Option<Point<S>> {
        Some(self.draw())
    }
}
