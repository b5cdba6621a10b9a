//! Connected components of affine zero sets by sign-crossing cells.
//!
//! A lattice of cells covers a ball; a cell is crossing when every component
//! of the map changes sign over its vertices (for k = 1 that is the usual
//! marching criterion). Crossing cells adjacent through a facet are merged
//! by union-find; the component count of the zero set is the number of
//! classes. A transversal zero set at sufficient resolution is traced
//! faithfully; tangential sign-touches are invisible, which is the right
//! behavior for counting stable components.

pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
}

/// Result of a marching pass: crossing-cell classes over the lattice.
pub struct GridComponents {
    /// Number of connected crossing-cell classes.
    pub count: usize,
    /// Number of classes with no cell near the ball boundary.
    pub interior_count: usize,
}

/// Components of {F = 0} ∩ B(0, radius) on a `cells_per_axis` lattice, for a
/// map given by a per-point evaluator filling one value per component.
/// Supports n ∈ {2, 3}.
pub fn grid_components<F>(n: usize, radius: f64, cells_per_axis: usize, eval: F) -> GridComponents
where
    F: Fn(&[f64], &mut Vec<f64>),
{
    assert!(n == 2 || n == 3, "grid components support n = 2 or 3");
    let m = cells_per_axis;
    let nv = m + 1;
    let h = 2.0 * radius / m as f64;
    let total_verts = nv.pow(n as u32);

    // Per-vertex sign bits, one i8 per component, packed contiguously.
    let mut pt = [0.0f64; 3];
    let mut vbuf: Vec<f64> = Vec::new();
    let mut k = 0usize;
    let mut signs: Vec<i8> = Vec::new();
    for v in 0..total_verts {
        let mut rem = v;
        for d in (0..n).rev() {
            pt[d] = -radius + h * (rem % nv) as f64;
            rem /= nv;
        }
        eval(&pt[..n], &mut vbuf);
        if v == 0 {
            k = vbuf.len();
            signs.reserve(total_verts * k);
        }
        for &val in vbuf.iter() {
            signs.push(if val >= 0.0 { 1 } else { -1 });
        }
    }

    // Vertex strides for corner lookup (row-major, last axis fastest).
    let mut vstride = [0usize; 3];
    {
        let mut s = 1usize;
        for d in (0..n).rev() {
            vstride[d] = s;
            s *= nv;
        }
    }
    let corner_count = 1usize << n;
    let mut corner_offsets = [0usize; 8];
    for c in 0..corner_count {
        let mut off = 0;
        for d in 0..n {
            if c & (1 << d) != 0 {
                off += vstride[d];
            }
        }
        corner_offsets[c] = off;
    }

    let total_cells = m.pow(n as u32);
    let mut cstride = [0usize; 3];
    {
        let mut s = 1usize;
        for d in (0..n).rev() {
            cstride[d] = s;
            s *= m;
        }
    }

    const NO_CELL: u32 = u32::MAX;
    let mut cell_slot = vec![NO_CELL; total_cells];
    let mut crossing_cells: Vec<u32> = Vec::new();
    let mut touches: Vec<bool> = Vec::new();
    let cell_r = 0.5 * h * (n as f64).sqrt();
    for cell in 0..total_cells {
        let mut rem = cell;
        let mut base_vert = 0usize;
        let mut center2 = 0.0f64;
        for d in (0..n).rev() {
            let i = rem % m;
            rem /= m;
            base_vert += i * vstride[d];
            let c = -radius + h * i as f64 + 0.5 * h;
            center2 += c * c;
        }
        let dist = center2.sqrt();
        if dist - cell_r > radius {
            continue;
        }
        let mut crossing = true;
        for comp in 0..k {
            let mut has_pos = false;
            let mut has_neg = false;
            for c in 0..corner_count {
                let s = signs[(base_vert + corner_offsets[c]) * k + comp];
                if s > 0 {
                    has_pos = true;
                } else {
                    has_neg = true;
                }
            }
            if !(has_pos && has_neg) {
                crossing = false;
                break;
            }
        }
        if crossing {
            cell_slot[cell] = crossing_cells.len() as u32;
            crossing_cells.push(cell as u32);
            touches.push(dist + cell_r > radius - 2.0 * h);
        }
    }

    let mut uf = UnionFind::new(crossing_cells.len());
    for (slot, &cell) in crossing_cells.iter().enumerate() {
        let cell = cell as usize;
        let mut rem = cell;
        let mut idx = [0usize; 3];
        for d in (0..n).rev() {
            idx[d] = rem % m;
            rem /= m;
        }
        for d in 0..n {
            if idx[d] + 1 < m {
                let nb = cell + cstride[d];
                if cell_slot[nb] != NO_CELL {
                    uf.union(slot as u32, cell_slot[nb]);
                }
            }
        }
    }

    let mut roots: Vec<u32> = (0..crossing_cells.len() as u32).map(|i| uf.find(i)).collect();
    let mut boundary_roots: Vec<u32> = roots
        .iter()
        .zip(&touches)
        .filter(|(_, &t)| t)
        .map(|(&r, _)| r)
        .collect();
    boundary_roots.sort_unstable();
    boundary_roots.dedup();
    roots.sort_unstable();
    roots.dedup();
    let count = roots.len();
    let interior_count = roots.iter().filter(|r| !boundary_roots.contains(r)).count();
    GridComponents {
        count,
        interior_count,
    }
}

/// Component count only.
pub fn component_count<F>(n: usize, radius: f64, cells_per_axis: usize, eval: F) -> usize
where
    F: Fn(&[f64], &mut Vec<f64>),
{
    grid_components(n, radius, cells_per_axis, eval).count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_in_disc() {
        let count = component_count(2, 2.0, 128, |x, out| {
            out.clear();
            out.push(x[0] * x[0] + x[1] * x[1] - 1.0);
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn two_nested_circles() {
        let count = component_count(2, 3.0, 192, |x, out| {
            out.clear();
            let r2 = x[0] * x[0] + x[1] * x[1];
            out.push((r2 - 1.0) * (r2 - 4.0));
        });
        assert_eq!(count, 2);
    }

    #[test]
    fn torus_in_ball() {
        // (x² + y² - 2)² + z² - 1 inside B(0, √6): a single torus.
        let count = component_count(3, 6.0f64.sqrt(), 72, |x, out| {
            out.clear();
            let s = x[0] * x[0] + x[1] * x[1];
            out.push((s - 2.0) * (s - 2.0) + x[2] * x[2] - 1.0);
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn interior_vs_touching() {
        // radius-1 circle inside B(0,1.05): everything sits in the boundary ring
        let g = grid_components(2, 1.05, 96, |x, out| {
            out.clear();
            out.push(x[0] * x[0] + x[1] * x[1] - 1.0);
        });
        assert_eq!(g.interior_count, 0);
        let g = grid_components(2, 2.0, 96, |x, out| {
            out.clear();
            out.push(x[0] * x[0] + x[1] * x[1] - 1.0);
        });
        assert_eq!(g.interior_count, 1);
        assert_eq!(g.count, 1);
    }

    #[test]
    fn codimension_two_point_cells() {
        // {y = x} ∩ {y = -x} is the origin: a single crossing-cell class.
        let count = component_count(2, 1.0, 64, |x, out| {
            out.clear();
            out.push(x[1] - x[0]);
            out.push(x[1] + x[0]);
        });
        assert_eq!(count, 1);
    }
}
