//! Hierarchical, order-independent random streams.
//!
//! A [`RngSeed`] is a master seed plus a path of stream ids. Two seeds with the
//! same master and path produce the same draws no matter when or on which
//! thread the generator is created, which is what lets the pipeline run its
//! task grid in parallel while staying byte-for-byte reproducible.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RngSeed {
    master: u64,
    path: Vec<u64>,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngSeed {
    pub fn new(master: u64) -> Self {
        Self {
            master,
            path: Vec::new(),
        }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    /// Derive the sub-stream `id` of this stream.
    pub fn child(&self, id: u64) -> Self {
        let mut path = self.path.clone();
        path.push(id);
        Self {
            master: self.master,
            path,
        }
    }

    /// Labelled sub-stream; the label is hashed into a stream id.
    pub fn named(&self, label: &str) -> Self {
        let id = label
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325_u64, |h, b| {
                (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
            });
        self.child(id)
    }

    fn key(&self) -> u64 {
        let mut h = splitmix64(self.master);
        for (depth, id) in self.path.iter().enumerate() {
            h = splitmix64(h ^ splitmix64(id.wrapping_add(depth as u64 + 1)));
        }
        h
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.key())
    }
}
