//! The Carter surface of a diagram: the ribbon graph of its classical
//! crossings with every boundary circle capped by a disk.

mod cut;
mod embedded;
mod homology;
mod map;

pub use cut::{cut_along_loop, is_disk_bounding, CutComponent};
pub use embedded::{trace_state_loops, EmbeddedLoop, Step};
pub use homology::{walk_intersection, HomologyBasis, HomologyClass};
pub use map::{CombinatorialMap, MapDump};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::diagram::VirtualLinkDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("loop is not on the surface: {0}")]
    LoopNotOnSurface(String),
    #[error("loop is not embedded: {0}")]
    LoopNotEmbedded(String),
    #[error("classes of different rank ({0} and {1})")]
    BasisMismatch(usize, usize),
    #[error("torus index {0} out of range for genus {1}")]
    IndexOutOfRange(usize, usize),
    #[error("intersection form: {0}")]
    Form(#[from] AlgebraError),
}

/// A diagram on its Carter surface, with a symplectic homology basis.
#[derive(Clone, Debug)]
pub struct SurfaceRep {
    map: CombinatorialMap,
    homology: HomologyBasis,
}

pub fn build_carter_surface(d: &VirtualLinkDiagram) -> SurfaceRep {
    let map = CombinatorialMap::new(d);
    let homology = HomologyBasis::new(&map).expect("intersection form of a closed surface is unimodular");
    SurfaceRep { map, homology }
}

impl SurfaceRep {
    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn homology(&self) -> &HomologyBasis {
        &self.homology
    }

    pub fn genus(&self) -> usize {
        self.map.genus()
    }

    pub fn loop_homology(&self, l: &EmbeddedLoop) -> HomologyClass {
        self.homology.loop_class(&self.map, l)
    }

    /// Class of a loop given as raw steps, validated first.
    pub fn loop_homology_of_steps(&self, steps: Vec<Step>) -> Result<HomologyClass, SurfaceError> {
        Ok(self.loop_homology(&EmbeddedLoop::new(&self.map, steps)?))
    }

    pub fn cut_along_loop(&self, l: &EmbeddedLoop) -> Vec<CutComponent> {
        cut_along_loop(&self.map, l)
    }

    pub fn is_disk_bounding(&self, l: &EmbeddedLoop) -> bool {
        is_disk_bounding(&self.map, l)
    }
}

pub fn genus(rep: &SurfaceRep) -> usize {
    rep.genus()
}

#[cfg(test)]
mod tests;
