//! Geodesic icosahedral subdivisions of S² with antipodal bookkeeping.
//!
//! The icosahedron is centrally symmetric and midpoint subdivision commutes
//! with v ↦ -v, so every level stays closed under the antipodal map; the
//! antipode of a vertex is found by exact bit-pattern lookup (IEEE negation
//! and symmetric arithmetic make -v exactly representable). Meshes are
//! trial-independent and cached per level.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct SphereMesh {
    pub level: u32,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[u32; 3]>,
    /// Faces sharing an edge with face i (3 entries, u32::MAX if missing).
    pub face_adj: Vec<[u32; 3]>,
    pub antipode_vertex: Vec<u32>,
    pub antipode_face: Vec<u32>,
    /// Largest edge length (chord) at this level.
    pub max_edge: f64,
}

pub fn n_faces(level: u32) -> usize {
    20usize << (2 * level)
}

/// Smallest level with at least `triangles` faces (clamped to [0, 8]).
pub fn level_for_resolution(triangles: usize) -> u32 {
    let mut level = 0u32;
    while n_faces(level) < triangles && level < 8 {
        level += 1;
    }
    level
}

fn key(v: &[f64; 3]) -> [u64; 3] {
    // +0.0 and -0.0 must collide: adding 0.0 canonicalizes the sign bit.
    [
        (v[0] + 0.0).to_bits(),
        (v[1] + 0.0).to_bits(),
        (v[2] + 0.0).to_bits(),
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn build(level: u32) -> SphereMesh {
    // Closed under negation: (0, ±1, ±φ) and its cyclic permutations.
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let raw: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let mut vertices: Vec<[f64; 3]> = raw.into_iter().map(normalize).collect();
    let mut faces: Vec<[u32; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut midpoint: HashMap<(u32, u32), u32> = HashMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut mid = |a: u32, b: u32, vertices: &mut Vec<[f64; 3]>| -> u32 {
            let k = (a.min(b), a.max(b));
            if let Some(&id) = midpoint.get(&k) {
                return id;
            }
            let va = vertices[a as usize];
            let vb = vertices[b as usize];
            let m = normalize([va[0] + vb[0], va[1] + vb[1], va[2] + vb[2]]);
            let id = vertices.len() as u32;
            vertices.push(m);
            midpoint.insert(k, id);
            id
        };
        for f in &faces {
            let [a, b, c] = *f;
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }

    let index: HashMap<[u64; 3], u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (key(v), i as u32))
        .collect();
    let antipode_vertex: Vec<u32> = vertices
        .iter()
        .map(|v| {
            *index
                .get(&key(&[-v[0], -v[1], -v[2]]))
                .expect("mesh not antipodally closed")
        })
        .collect();

    let mut face_of: HashMap<[u32; 3], u32> = HashMap::with_capacity(faces.len());
    for (i, f) in faces.iter().enumerate() {
        let mut s = *f;
        s.sort_unstable();
        face_of.insert(s, i as u32);
    }
    let antipode_face: Vec<u32> = faces
        .iter()
        .map(|f| {
            let mut s = [
                antipode_vertex[f[0] as usize],
                antipode_vertex[f[1] as usize],
                antipode_vertex[f[2] as usize],
            ];
            s.sort_unstable();
            *face_of.get(&s).expect("antipodal face missing")
        })
        .collect();

    let mut edge_faces: HashMap<(u32, u32), Vec<u32>> = HashMap::with_capacity(faces.len() * 2);
    for (i, f) in faces.iter().enumerate() {
        for e in 0..3 {
            let a = f[e];
            let b = f[(e + 1) % 3];
            edge_faces
                .entry((a.min(b), a.max(b)))
                .or_default()
                .push(i as u32);
        }
    }
    let mut face_adj = vec![[u32::MAX; 3]; faces.len()];
    for fs in edge_faces.values() {
        if fs.len() == 2 {
            let (x, y) = (fs[0], fs[1]);
            for slot in face_adj[x as usize].iter_mut() {
                if *slot == u32::MAX {
                    *slot = y;
                    break;
                }
            }
            for slot in face_adj[y as usize].iter_mut() {
                if *slot == u32::MAX {
                    *slot = x;
                    break;
                }
            }
        }
    }

    let mut max_edge = 0.0f64;
    for f in &faces {
        for e in 0..3 {
            let a = vertices[f[e] as usize];
            let b = vertices[f[(e + 1) % 3] as usize];
            let d = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
            max_edge = max_edge.max(d);
        }
    }

    SphereMesh {
        level,
        vertices,
        faces,
        face_adj,
        antipode_vertex,
        antipode_face,
        max_edge,
    }
}

/// The mesh at a subdivision level (cached; levels 0..=8 supported).
pub fn mesh(level: u32) -> Arc<SphereMesh> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SphereMesh>>>> = OnceLock::new();
    assert!(level <= 8, "mesh level {level} beyond the 2^20-triangle cap");
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(level).or_insert_with(|| Arc::new(build(level))).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_subdivision_formula() {
        for level in 0..=3 {
            let m = mesh(level);
            assert_eq!(m.faces.len(), n_faces(level));
            assert_eq!(m.vertices.len(), 10 * (1 << (2 * level)) + 2);
        }
    }

    #[test]
    fn antipodal_maps_are_involutions() {
        let m = mesh(3);
        for (i, &a) in m.antipode_vertex.iter().enumerate() {
            assert_eq!(m.antipode_vertex[a as usize] as usize, i);
            let v = m.vertices[i];
            let w = m.vertices[a as usize];
            assert_eq!([-v[0], -v[1], -v[2]], w);
        }
        for (i, &a) in m.antipode_face.iter().enumerate() {
            assert_eq!(m.antipode_face[a as usize] as usize, i);
        }
    }

    #[test]
    fn adjacency_is_threefold_and_symmetric() {
        let m = mesh(2);
        for (i, adj) in m.face_adj.iter().enumerate() {
            for &n in adj {
                assert_ne!(n, u32::MAX);
                assert!(m.face_adj[n as usize].contains(&(i as u32)));
            }
        }
    }

    #[test]
    fn resolution_mapping() {
        assert_eq!(level_for_resolution(1 << 14), 5);
        assert_eq!(level_for_resolution(1 << 20), 8);
    }
}
