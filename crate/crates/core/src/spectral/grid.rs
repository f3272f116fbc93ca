use crate::error::{Error, Result};

/// Largest supported spatial dimension.
pub const MAX_DIM: usize = 3;

/// Uniform periodic grid on the unit torus `[0,1)^d`.
///
/// Nodes sit at `x_j = j / n` along every axis. Storage is row-major with
/// axis 0 varying slowest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    dim: usize,
    n: usize,
}

impl Grid {
    pub fn new(dim: usize, n_per_axis: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidGrid(format!("dimension {dim} not in 1..={MAX_DIM}")));
        }
        if n_per_axis < 4 || !n_per_axis.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 4, got {n_per_axis}"
            )));
        }
        Ok(Self { dim, n: n_per_axis })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of nodes, `n^d`.
    #[inline]
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        1.0 / self.n as f64
    }

    #[inline]
    pub fn cell_volume(&self) -> f64 {
        1.0 / self.len() as f64
    }

    /// Stride of `axis` in the flat storage.
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.dim - 1 - axis) as u32)
    }

    /// Multi-index of a flat index; unused trailing axes are zero.
    #[inline]
    pub fn multi_index(&self, mut idx: usize) -> [usize; MAX_DIM] {
        let mut out = [0; MAX_DIM];
        for axis in (0..self.dim).rev() {
            out[axis] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    #[inline]
    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi[..self.dim]
            .iter()
            .fold(0, |acc, &j| acc * self.n + j % self.n)
    }

    /// Coordinates of node `idx`.
    pub fn node(&self, idx: usize) -> [f64; MAX_DIM] {
        let m = self.multi_index(idx);
        let h = self.spacing();
        let mut x = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            x[axis] = m[axis] as f64 * h;
        }
        x
    }

    /// Signed wavenumber of storage position `j` along an axis, in `[-n/2, n/2)`.
    #[inline]
    pub fn wavenumber(&self, j: usize) -> i64 {
        let n = self.n as i64;
        let j = j as i64;
        if j < n / 2 {
            j
        } else {
            j - n
        }
    }

    /// Wavevector of flat spectral index `idx`.
    #[inline]
    pub fn wavevector(&self, idx: usize) -> [i64; MAX_DIM] {
        let m = self.multi_index(idx);
        let mut k = [0i64; MAX_DIM];
        for axis in 0..self.dim {
            k[axis] = self.wavenumber(m[axis]);
        }
        k
    }

    /// Whether wavenumber `k` along an axis is the unpaired Nyquist mode.
    #[inline]
    pub fn is_nyquist(&self, k: i64) -> bool {
        k == -(self.n as i64) / 2
    }

    /// Minimal-image displacement vector for flat index `idx`, components in `[-1/2, 1/2)`.
    pub fn displacement(&self, idx: usize) -> [f64; MAX_DIM] {
        let k = self.wavevector(idx);
        let h = self.spacing();
        let mut z = [0.0; MAX_DIM];
        for axis in 0..self.dim {
            z[axis] = k[axis] as f64 * h;
        }
        z
    }

    /// Flat index of node `idx` shifted by the node offset of `shift_idx`
    /// (periodic wrap).
    #[inline]
    pub fn shifted(&self, idx: usize, shift: &[usize; MAX_DIM]) -> usize {
        let m = self.multi_index(idx);
        let mut out = 0;
        for axis in 0..self.dim {
            out = out * self.n + (m[axis] + shift[axis]) % self.n;
        }
        out
    }
}

/// Euclidean norm over the first `dim` components.
#[inline]
pub fn norm(v: &[f64; MAX_DIM], dim: usize) -> f64 {
    v[..dim].iter().map(|c| c * c).sum::<f64>().sqrt()
}
