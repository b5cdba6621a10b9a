use ovalab_core::ensembles::sample_kostlan;
use ovalab_core::morse_crit::{find_crit_points, MorseFunctionSpec};
use ovalab_core::poly::MultiPoly;
use ovalab_core::sphere_mesh::mesh;

fn oracle_extrema(sigma: &MultiPoly, level: u32) -> Vec<[f64; 3]> {
    let m = mesh(level);
    let vals: Vec<f64> = m.vertices.iter().map(|v| sigma.evaluate(v).unwrap()).collect();
    let nf = m.faces.len();
    let mut crossing = vec![false; nf];
    for (f, face) in m.faces.iter().enumerate() {
        let s0 = vals[face[0] as usize] >= 0.0;
        let s1 = vals[face[1] as usize] >= 0.0;
        let s2 = vals[face[2] as usize] >= 0.0;
        crossing[f] = s0 != s1 || s1 != s2;
    }
    let p_of = |v: &[f64; 3]| -> f64 {
        (v[0]*v[0] + 2.0*v[1]*v[1] + 3.0*v[2]*v[2]) / (v[0]*v[0] + v[1]*v[1] + v[2]*v[2])
    };
    let curve_point = |f: usize| -> [f64; 3] {
        let face = m.faces[f];
        let mut pts: Vec<[f64; 3]> = Vec::new();
        for e in 0..3 {
            let a = face[e] as usize;
            let b = face[(e + 1) % 3] as usize;
            if (vals[a] >= 0.0) != (vals[b] >= 0.0) {
                let t = vals[a] / (vals[a] - vals[b]);
                pts.push([
                    m.vertices[a][0] + t * (m.vertices[b][0] - m.vertices[a][0]),
                    m.vertices[a][1] + t * (m.vertices[b][1] - m.vertices[a][1]),
                    m.vertices[a][2] + t * (m.vertices[b][2] - m.vertices[a][2]),
                ]);
            }
        }
        [(pts[0][0]+pts[1][0])/2.0, (pts[0][1]+pts[1][1])/2.0, (pts[0][2]+pts[1][2])/2.0]
    };
    let mut visited = vec![false; nf];
    let mut out = Vec::new();
    for f0 in 0..nf {
        if !crossing[f0] || visited[f0] { continue; }
        let mut cycle = Vec::new();
        let mut cur = f0;
        let mut prev = usize::MAX;
        loop {
            visited[cur] = true;
            cycle.push(cur);
            let nbs: Vec<usize> = m.face_adj[cur].iter()
                .filter(|&&nb| nb != u32::MAX && crossing[nb as usize])
                .map(|&nb| nb as usize).collect();
            if nbs.len() != 2 { return Vec::new(); }
            let next = if nbs[0] != prev { nbs[0] } else { nbs[1] };
            if next == f0 { break; }
            if visited[next] { return Vec::new(); }
            prev = cur;
            cur = next;
        }
        let pts: Vec<[f64; 3]> = cycle.iter().map(|&f| curve_point(f)).collect();
        let ps: Vec<f64> = pts.iter().map(p_of).collect();
        let n = ps.len();
        for i in 0..n {
            let a = ps[(i + n - 1) % n];
            let b = ps[i];
            let c = ps[(i + 1) % n];
            if (b > a && b > c) || (b < a && b < c) { out.push(pts[i]); }
        }
    }
    out
}

fn canon(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0]*v[0] + v[1]*v[1] + v[2]*v[2]).sqrt();
    let u = [v[0]/n, v[1]/n, v[2]/n];
    for c in u { if c.abs() > 1e-9 { return if c < 0.0 { [-u[0], -u[1], -u[2]] } else { u }; } }
    u
}

fn main() {
    let spec = MorseFunctionSpec::default_for(2);
    for trial in [11u64, 14] {
        let s = sample_kostlan(2, 10, 1, 52_000 + trial);
        let solver = find_crit_points(&s, &spec).unwrap();
        let oracle = oracle_extrema(s.map.component(0), 8);
        println!("trial {trial}: solver {} oracle/2 {}", solver.len(), oracle.len() / 2);
        let mut canon_oracle: Vec<[f64; 3]> = oracle.iter().map(|o| canon(*o)).collect();
        // collapse antipodal duplicates of the oracle list itself
        let mut uniq: Vec<[f64; 3]> = Vec::new();
        for o in canon_oracle.drain(..) {
            if !uniq.iter().any(|q| {
                let dot: f64 = q.iter().zip(&o).map(|(a, b)| a * b).sum();
                dot.abs() > 1.0 - 1e-10
            }) { uniq.push(o); }
        }
        println!("  distinct oracle pts: {}", uniq.len());
        for oc in &uniq {
            let best = solver.iter().map(|r| {
                let rc = canon(r.point);
                let dot: f64 = oc.iter().zip(&rc).map(|(a, b)| a * b).sum();
                (1.0 - dot.abs()).max(0.0).sqrt() * 1.4142
            }).fold(f64::INFINITY, f64::min);
            if best > 1e-7 {
                println!("  oracle pt ({:.8},{:.8},{:.8}) nearest solver dist {:.3e}",
                    oc[0], oc[1], oc[2], best);
            }
        }
    }
}
