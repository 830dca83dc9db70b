//! Triangle meshes with named face groups and their OBJ text form.

use crate::error::{Error, Result};

/// Named set of triangles indexing into the shared vertex list.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceGroup {
    pub name: String,
    pub faces: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub groups: Vec<FaceGroup>,
}

impl Mesh {
    /// Appends a group whose faces index into `vertices` (local numbering).
    pub fn add_group(&mut self, name: &str, vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) {
        let offset = self.vertices.len();
        self.vertices.extend(vertices);
        let faces = faces.into_iter().map(|f| f.map(|i| i + offset)).collect();
        self.groups.push(FaceGroup { name: name.to_string(), faces });
    }

    pub fn group(&self, name: &str) -> Option<&FaceGroup> {
        self.groups.iter().find(|g| g.name == name)
    }

    pub fn face_count(&self) -> usize {
        self.groups.iter().map(|g| g.faces.len()).sum()
    }

    /// Largest distance between vertices used by `group`, or `0` for an empty group.
    pub fn group_extent(&self, group: &FaceGroup) -> f64 {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for f in &group.faces {
            for &i in f {
                for k in 0..3 {
                    lo[k] = lo[k].min(self.vertices[i][k]);
                    hi[k] = hi[k].max(self.vertices[i][k]);
                }
            }
        }
        if group.faces.is_empty() {
            return 0.0;
        }
        (0..3).map(|k| (hi[k] - lo[k]).powi(2)).sum::<f64>().sqrt()
    }

    /// Wavefront OBJ text with one `g` statement per group and 1-based indices.
    pub fn to_obj(&self) -> String {
        let mut out = String::with_capacity(64 * (self.vertices.len() + self.face_count()));
        for v in &self.vertices {
            out.push_str(&format!("v {:.17e} {:.17e} {:.17e}\n", v[0], v[1], v[2]));
        }
        for g in &self.groups {
            out.push_str(&format!("g {}\n", g.name));
            for f in &g.faces {
                out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
            }
        }
        out
    }

    /// Reads the subset of OBJ written by [`Mesh::to_obj`]: vertices, groups and
    /// triangular faces, with optional `/`-separated texture and normal indices.
    pub fn parse_obj(text: &str) -> Result<Self> {
        let mut mesh = Mesh::default();
        let bad = |n: usize, msg: &str| Error::InvalidInput(format!("OBJ line {}: {msg}", n + 1));
        for (n, line) in text.lines().enumerate() {
            let mut it = line.split_whitespace();
            match it.next() {
                Some("v") => {
                    let c: Vec<f64> = it.map(|t| t.parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad(n, "bad coordinate"))?;
                    if c.len() < 3 {
                        return Err(bad(n, "vertex needs three coordinates"));
                    }
                    mesh.vertices.push([c[0], c[1], c[2]]);
                }
                Some("g") | Some("o") => {
                    let name = it.collect::<Vec<_>>().join(" ");
                    mesh.groups.push(FaceGroup { name, faces: vec![] });
                }
                Some("f") => {
                    let idx: Vec<usize> = it
                        .map(|t| t.split('/').next().unwrap_or("").parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| bad(n, "bad face index"))?;
                    if idx.len() != 3 || idx.iter().any(|&i| i == 0 || i > mesh.vertices.len()) {
                        return Err(bad(n, "face must reference three existing vertices"));
                    }
                    if mesh.groups.is_empty() {
                        mesh.groups.push(FaceGroup { name: "default".into(), faces: vec![] });
                    }
                    let g = mesh.groups.last_mut().expect("group exists");
                    g.faces.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
                }
                _ => {}
            }
        }
        Ok(mesh)
    }
}

/// Triangles of an `nu × nv` vertex grid stored row-major in `u`, optionally periodic in `u`.
pub fn grid_faces(nu: usize, nv: usize, periodic_u: bool) -> Vec<[usize; 3]> {
    let id = |i: usize, j: usize| (i % nu) * nv + j;
    let rows = if periodic_u { nu } else { nu - 1 };
    let mut faces = Vec::with_capacity(2 * rows * (nv - 1));
    for i in 0..rows {
        for j in 0..nv - 1 {
            faces.push([id(i, j), id(i + 1, j), id(i + 1, j + 1)]);
            faces.push([id(i, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    faces
}
