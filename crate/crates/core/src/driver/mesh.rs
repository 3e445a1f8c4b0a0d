//! Cartesian meshes.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh1D {
    pub edges: Vec<f64>,
}

impl Mesh1D {
    pub fn uniform(x0: f64, x1: f64, cells: usize) -> Result<Self> {
        if cells == 0 || !(x1 > x0) {
            return Err(Error::Config(format!("bad mesh [{x0}, {x1}] with {cells} cells")));
        }
        let h = (x1 - x0) / cells as f64;
        let mut edges: Vec<f64> = (0..=cells).map(|i| x0 + i as f64 * h).collect();
        edges[cells] = x1;
        Ok(Mesh1D { edges })
    }

    pub fn from_edges(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 2 || edges.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config("mesh edges must be strictly increasing".into()));
        }
        Ok(Mesh1D { edges })
    }

    pub fn cells(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn width(&self, e: usize) -> f64 {
        self.edges[e + 1] - self.edges[e]
    }

    pub fn centre(&self, e: usize) -> f64 {
        0.5 * (self.edges[e] + self.edges[e + 1])
    }

    pub fn start(&self) -> f64 {
        self.edges[0]
    }

    pub fn end(&self) -> f64 {
        self.edges[self.cells()]
    }

    pub fn min_width(&self) -> f64 {
        (0..self.cells()).map(|e| self.width(e)).fold(f64::INFINITY, f64::min)
    }

    /// Origins and widths of the elements padded with `ng` ghosts per side.
    /// Periodic ghosts copy the wrapped geometry, others mirror the widths.
    pub fn padded(&self, ng: usize, periodic: bool) -> (Vec<f64>, Vec<f64>) {
        let ne = self.cells();
        let mut origin = vec![0.0; ne + 2 * ng];
        let mut width = vec![0.0; ne + 2 * ng];
        for e in 0..ne {
            origin[e + ng] = self.edges[e];
            width[e + ng] = self.width(e);
        }
        for g in 1..=ng {
            let (l, r) = (ng - g, ng + ne - 1 + g);
            if periodic {
                let (sl, sr) = ((ne * ng - g) % ne, (g - 1) % ne);
                origin[l] = self.edges[sl];
                width[l] = self.width(sl);
                origin[r] = self.edges[sr];
                width[r] = self.width(sr);
            } else {
                let (sl, sr) = ((g - 1).min(ne - 1), ne - 1 - (g - 1).min(ne - 1));
                width[l] = self.width(sl);
                origin[l] = origin[l + 1] - width[l];
                width[r] = self.width(sr);
                origin[r] = origin[r - 1] + width[r - 1];
            }
        }
        (origin, width)
    }

    /// Element containing `x`, clamped to the mesh.
    pub fn locate(&self, x: f64) -> usize {
        match self.edges.binary_search_by(|e| e.partial_cmp(&x).unwrap_or(std::cmp::Ordering::Less)) {
            Ok(i) => i.min(self.cells() - 1),
            Err(i) => i.saturating_sub(1).min(self.cells() - 1),
        }
    }
}

/// Tensor product of two 1-D meshes.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh2D {
    pub x: Mesh1D,
    pub y: Mesh1D,
}

impl Mesh2D {
    pub fn uniform(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Result<Self> {
        Ok(Mesh2D { x: Mesh1D::uniform(x.0, x.1, nx)?, y: Mesh1D::uniform(y.0, y.1, ny)? })
    }

    pub fn nx(&self) -> usize {
        self.x.cells()
    }

    pub fn ny(&self) -> usize {
        self.y.cells()
    }
}
