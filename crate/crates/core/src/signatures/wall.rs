use std::fmt;

use crate::complex::construct::{restratify_boundary, Restratification};
use crate::complex::glue::split_by_bicollar;
use crate::complex::{barycentric_subdivide, Decomposition, Perversity, Simplex, SimplicialComplex, Space, Subdivision};
use crate::ichain::{
    build_complex, build_qp_quotient, build_relative, connecting_map, homology, image_group, induced_map,
    translate_chain,
};
use crate::pairing::{middle_pairing, phi_gram, relative_middle_pairing, PairingError};
use crate::qlinalg::{kernel_image, BilinearForm, QMatrix, Subspace};

use super::maslov::{maslov, MaslovOutcome, MaslovProblem};
use super::SignatureError;

/// The Maslov problem of a decomposition: `V = I^{q̄/p̄}H_{2n}(Z)` with `Φ`,
/// `A = ker(V → I^{q̄/p̄}H_{2n}(Y1))`, `B = ker d`, `C = ker(V → I^{q̄/p̄}H_{2n}(Y2))`.
#[derive(Clone, Debug)]
pub struct WallDefect {
    pub problem: MaslovProblem,
    pub outcome: MaslovOutcome,
    /// Subdivisions of the decomposition applied before `Φ` was computable.
    pub depth: usize,
}

fn check_contract(x: &Space, p: &Perversity, q: &Perversity) -> Result<usize, SignatureError> {
    p.check_for(x)?;
    q.check_for(x)?;
    if x.dim() % 4 != 0 {
        return Err(SignatureError::Contract(format!("dimension {} is not a multiple of 4", x.dim())));
    }
    if !p.le(q) || !p.is_dual_to(q, x) {
        return Err(SignatureError::Contract(format!(
            "need p ≤ q and p + q = t, got {:?}, {:?}",
            p.values(),
            q.values()
        )));
    }
    Ok(x.dim() / 2)
}

pub fn wall_defect(d: &Decomposition, p: &Perversity, q: &Perversity, max_depth: usize) -> Result<WallDefect, SignatureError> {
    check_contract(&d.x, p, q)?;
    let mut current = d.clone();
    let (mut pc, mut qc) = (p.clone(), q.clone());
    for depth in 0..=max_depth {
        match defect_at(&current, &pc, &qc) {
            Err(SignatureError::Pairing(PairingError::GeneralPosition(_))) if depth < max_depth => {
                let (next, sd) = current.subdivide()?;
                pc = sd.transfer(&current.x, &pc);
                qc = sd.transfer(&current.x, &qc);
                current = next;
            }
            Ok((problem, outcome)) => return Ok(WallDefect { problem, outcome, depth }),
            Err(e) => return Err(e),
        }
    }
    unreachable!("loop returns at max_depth")
}

fn defect_at(d: &Decomposition, p: &Perversity, q: &Perversity) -> Result<(MaslovProblem, MaslovOutcome), SignatureError> {
    let x = &d.x;
    let k = x.dim() / 2;
    let z = d.z()?;
    let (pz, qz) = (p.transfer(x, &z)?, q.transfer(x, &z)?);
    let cz = build_qp_quotient(&z, None, &pz, &qz)?;
    let hv = homology(&cz, k);
    let phi = if hv.dim() == 0 { QMatrix::zeros(0, 0) } else { phi_gram(&z, &pz, &qz, k, &hv.reps, &hv.reps)? };
    let kernel_into = |y: &Space, label: &str| -> Result<Subspace, SignatureError> {
        let (py, qy) = (p.transfer(x, y)?, q.transfer(x, y)?);
        let cy = build_qp_quotient(y, None, &py, &qy)?;
        let hy = homology(&cy, k);
        let m = induced_map(label, &hv, &cy, &hy, |v| translate_chain(&z, y, k, v))?;
        Ok(kernel_image(&m.matrix).kernel)
    };
    let a = kernel_into(&d.y1()?, "Z -> Y1")?;
    let c = kernel_into(&d.y2()?, "Z -> Y2")?;
    let cpz = build_complex(&z, &pz)?;
    let hp = homology(&cpz, k - 1);
    let dm = connecting_map("d", &cz, &hv, 0, &cpz, &hp)?;
    let b = kernel_image(&dm.matrix).kernel;
    let problem = MaslovProblem::new(BilinearForm::new(phi)?, a, b, c)?;
    let outcome = maslov(&problem)?;
    Ok((problem, outcome))
}

/// All terms of the non-additivity identity plus the `S`, `S⊥`, `W`
/// diagnostics, in the middle degree `2n` of a `4n`-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallReport {
    pub sigma_x: i64,
    pub sigma_y1: i64,
    pub sigma_y2: i64,
    pub maslov: i64,
    pub dim_v: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    pub dim_w: usize,
    /// `dim I^{p̄→q̄}H_{2n}(X)`.
    pub dim_image: usize,
    /// `dim I^{p̄↠q̄}H_{2n}(Y1, Z) + dim I^{p̄↠q̄}H_{2n}(Y2, Z)`.
    pub dim_j: usize,
    pub dim_k: usize,
    pub dim_s: usize,
    pub dim_s_perp: usize,
    pub residual: i64,
    pub defect_depth: usize,
}

impl WallReport {
    /// `dim W = dim S⊥ − dim S`, and `S⊥` has the dimension of an
    /// annihilator of `S` in the nondegenerate `K`.
    pub fn diagnostics_consistent(&self) -> bool {
        self.dim_w + self.dim_s == self.dim_s_perp && self.dim_s_perp + self.dim_s == self.dim_k
    }

    pub fn holds(&self) -> bool {
        self.residual == 0 && self.diagnostics_consistent()
    }
}

impl fmt::Display for WallReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sigma_x = {}", self.sigma_x)?;
        writeln!(f, "sigma_y1 = {}", self.sigma_y1)?;
        writeln!(f, "sigma_y2 = {}", self.sigma_y2)?;
        writeln!(f, "maslov = {}", self.maslov)?;
        writeln!(f, "residual = {}", self.residual)?;
        writeln!(f, "dim_v = {}", self.dim_v)?;
        writeln!(f, "dim_a = {}", self.dim_a)?;
        writeln!(f, "dim_b = {}", self.dim_b)?;
        writeln!(f, "dim_c = {}", self.dim_c)?;
        writeln!(f, "dim_w = {}", self.dim_w)?;
        writeln!(f, "dim_image = {}", self.dim_image)?;
        writeln!(f, "dim_j = {}", self.dim_j)?;
        writeln!(f, "dim_k = {}", self.dim_k)?;
        writeln!(f, "dim_s = {}", self.dim_s)?;
        writeln!(f, "dim_s_perp = {}", self.dim_s_perp)?;
        writeln!(f, "defect_depth = {}", self.defect_depth)?;
        write!(f, "status = {}", if self.holds() { "ok" } else { "FAILED" })
    }
}

struct Diagnostics {
    dim_image: usize,
    dim_im_y: usize,
    dim_s_perp: usize,
}

/// `S⊥ = I^{p̄→q̄}H_{2n}(X) ∩ im(I^{q̄}H_{2n}(Z) → I^{q̄}H_{2n}(X))` and the
/// image of `I^{p̄}H_{2n}(Y1) ⊕ I^{p̄}H_{2n}(Y2)`, all inside `I^{q̄}H_{2n}(X)`.
fn diagnostics(d: &Decomposition, p: &Perversity, q: &Perversity, k: usize) -> Result<Diagnostics, SignatureError> {
    let x = &d.x;
    let cq = build_complex(x, q)?;
    let hq = homology(&cq, k);
    let cp = build_complex(x, p)?;
    let img = image_group(&homology(&cp, k), &cq, &hq)?;
    let image = Subspace::span(hq.dim(), &img.coordinates);
    let z = d.z()?;
    let qz = q.transfer(x, &z)?;
    let czq = build_complex(&z, &qz)?;
    let mz = induced_map("Z -> X", &homology(&czq, k), &cq, &hq, |v| translate_chain(&z, x, k, v))?;
    let s_perp = image.intersection(&Subspace::column_space(&mz.matrix))?;
    let mut cols = Vec::new();
    for y in [d.y1()?, d.y2()?] {
        let py = p.transfer(x, &y)?;
        let cy = build_complex(&y, &py)?;
        let m = induced_map("Y -> X", &homology(&cy, k), &cq, &hq, |v| translate_chain(&y, x, k, v))?;
        cols.extend(m.matrix.columns());
    }
    let im_y = Subspace::span(hq.dim(), &cols);
    if !im_y.is_subspace_of(&image) {
        return Err(SignatureError::Internal("image of the pieces leaves I^{p->q}H".into()));
    }
    Ok(Diagnostics { dim_image: image.dim(), dim_im_y: im_y.dim(), dim_s_perp: s_perp.dim() })
}

pub fn verify_wall(d: &Decomposition, p: &Perversity, q: &Perversity, max_depth: usize) -> Result<WallReport, SignatureError> {
    let k = check_contract(&d.x, p, q)?;
    let x = &d.x;
    let mx = middle_pairing(x, p, q, max_depth)?;
    let sigma_x = mx.signature()?;
    let mut sig = [0i64; 2];
    let mut dim_j = 0;
    for (slot, y) in [d.y1()?, d.y2()?].iter().enumerate() {
        let m = relative_middle_pairing(y, &p.transfer(x, y)?, &q.transfer(x, y)?, max_depth)?;
        sig[slot] = m.signature()?;
        dim_j += m.matrix.rows();
    }
    let defect = wall_defect(d, p, q, max_depth)?;
    let diag = diagnostics(d, p, q, k)?;
    if diag.dim_image != mx.matrix.rows() {
        return Err(SignatureError::Internal(format!(
            "I^(p->q)H has dimension {} but the pairing has size {}",
            diag.dim_image,
            mx.matrix.rows()
        )));
    }
    let dim_s = diag.dim_im_y.checked_sub(dim_j).ok_or_else(|| {
        SignatureError::Internal(format!("image of the pieces ({}) is smaller than J ({dim_j})", diag.dim_im_y))
    })?;
    let dim_k = diag.dim_image.checked_sub(dim_j).ok_or_else(|| SignatureError::Internal("J exceeds I^(p->q)H".into()))?;
    let o = &defect.outcome;
    let pr = &defect.problem;
    Ok(WallReport {
        sigma_x,
        sigma_y1: sig[0],
        sigma_y2: sig[1],
        maslov: o.index,
        dim_v: pr.dim(),
        dim_a: pr.a().dim(),
        dim_b: pr.b().dim(),
        dim_c: pr.c().dim(),
        dim_w: o.w_dim,
        dim_image: diag.dim_image,
        dim_j,
        dim_k,
        dim_s,
        dim_s_perp: diag.dim_s_perp,
        residual: sigma_x - sig[0] - sig[1] - o.index,
        defect_depth: defect.depth,
    })
}

/// `X = Y1 ∪_Z Y2` for a compact `X` with boundary, `Z` meeting `∂X` in
/// `∂Z`. Carries the restratification `X̂`, in which `∂X` becomes singular
/// strata and the split becomes an ordinary decomposition of an s-closed space.
///
/// Everything lives on the first barycentric subdivision of the input, where
/// each simplex meets `∂X` in a single face; on coarser triangulations the
/// simplicial groups of `X̂` can miss the homotopy type of `X − ∂X`.
#[derive(Clone, Debug)]
pub struct BoundaryDecomposition {
    pub original: Space,
    pub subdivision: Subdivision,
    /// The subdivided space.
    pub x: Space,
    pub z_faces: Vec<usize>,
    pub y1_tops: Vec<usize>,
    pub y2_tops: Vec<usize>,
    pub restratified: Restratification,
    pub hat: Decomposition,
}

impl BoundaryDecomposition {
    /// `z_faces`, `y1_tops` and `y2_tops` index simplices of `original`.
    pub fn new(original: Space, z_faces: &[usize], y1_tops: &[usize], y2_tops: &[usize]) -> Result<Self, SignatureError> {
        let n = original.dim();
        let subdivision = barycentric_subdivide(&original)?;
        let x = subdivision.space.clone();
        let z_faces = subdivision.subdivide_tops(n - 1, z_faces);
        let y1_tops = subdivision.subdivide_tops(n, y1_tops);
        let y2_tops = subdivision.subdivide_tops(n, y2_tops);
        let restratified = restratify_boundary(&x)?;
        let hat = Decomposition::from_parts(restratified.space.clone(), z_faces, y1_tops, y2_tops)?;
        Ok(BoundaryDecomposition {
            z_faces: hat.z_faces.clone(),
            y1_tops: hat.y1_tops.clone(),
            y2_tops: hat.y2_tops.clone(),
            original,
            subdivision,
            x,
            restratified,
            hat,
        })
    }

    /// Split along the declared bicollar of `original`.
    pub fn from_space(original: Space) -> Result<Self, SignatureError> {
        let (z, y1, y2) = split_by_bicollar(&original)?;
        Self::new(original, &z, &y1, &y2)
    }

    /// `Y_i` with its whole boundary `Z ∪ W_i` declared.
    fn piece(&self, tops: &[usize]) -> Result<Space, SignatureError> {
        let n = self.x.dim();
        let k = self.x.complex();
        let mut count = std::collections::HashMap::<usize, usize>::new();
        for &t in tops {
            for &f in k.faces(n, t) {
                *count.entry(f).or_default() += 1;
            }
        }
        let mut boundary: Vec<Simplex> = count.into_iter().filter(|&(_, c)| c == 1).map(|(f, _)| k.simplex(n - 1, f).to_vec()).collect();
        boundary.sort();
        Ok(self.x.restrict_to(tops, &boundary)?)
    }

    pub fn y1(&self) -> Result<Space, SignatureError> {
        self.piece(&self.y1_tops)
    }

    pub fn y2(&self) -> Result<Space, SignatureError> {
        self.piece(&self.y2_tops)
    }

    /// `Z` with boundary `∂Z = Z ∩ ∂X`, oriented as part of `∂Y1`.
    pub fn z(&self) -> Result<Space, SignatureError> {
        let n = self.x.dim();
        let zh = self.hat.z()?;
        let kz = zh.complex();
        let mut count = std::collections::HashMap::<usize, usize>::new();
        for t in 0..kz.count(n - 1) {
            for &f in kz.faces(n - 1, t) {
                *count.entry(f).or_default() += 1;
            }
        }
        let boundary: Vec<Simplex> = count.into_iter().filter(|&(_, c)| c == 1).map(|(f, _)| kz.simplex(n - 2, f).to_vec()).collect();
        let complex = SimplicialComplex::from_simplices(kz.n_vertices(), (0..kz.count(n - 1)).map(|i| kz.simplex(n - 1, i)))?;
        Ok(self.x.inherit(complex, n - 1, 1, &boundary, |k, i| {
            zh.orientation(kz.index_of(k.simplex(n - 1, i)).expect("same simplices"))
        })?)
    }
}

/// The restratified identity together with the same three signatures
/// computed directly on the spaces with boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWallReport {
    pub hat: WallReport,
    /// `σ_{p̄↠q̄}(X, ∂X)`.
    pub direct_x: i64,
    /// `σ_{p̄↠q̄}(Y_i, ∂Y_i)`.
    pub direct_y1: i64,
    pub direct_y2: i64,
}

impl BoundaryWallReport {
    pub fn lifts_agree(&self) -> bool {
        self.direct_x == self.hat.sigma_x && self.direct_y1 == self.hat.sigma_y1 && self.direct_y2 == self.hat.sigma_y2
    }

    pub fn holds(&self) -> bool {
        self.hat.holds() && self.lifts_agree()
    }
}

impl fmt::Display for BoundaryWallReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "direct_sigma_x = {}", self.direct_x)?;
        writeln!(f, "direct_sigma_y1 = {}", self.direct_y1)?;
        writeln!(f, "direct_sigma_y2 = {}", self.direct_y2)?;
        writeln!(f, "lifts_agree = {}", self.lifts_agree())?;
        write!(f, "{}", self.hat)
    }
}

pub fn verify_wall_boundary(
    bd: &BoundaryDecomposition,
    p: &Perversity,
    q: &Perversity,
    max_depth: usize,
) -> Result<BoundaryWallReport, SignatureError> {
    check_contract(&bd.original, p, q)?;
    let p = &bd.subdivision.transfer(&bd.original, p);
    let q = &bd.subdivision.transfer(&bd.original, q);
    let ph = bd.restratified.lift_low(p);
    let qh = bd.restratified.lift_high(q);
    let hat = verify_wall(&bd.hat, &ph, &qh, max_depth)?;
    let direct = |y: &Space| -> Result<i64, SignatureError> {
        Ok(relative_middle_pairing(y, &p.transfer(&bd.x, y)?, &q.transfer(&bd.x, y)?, max_depth)?.signature()?)
    };
    Ok(BoundaryWallReport { direct_x: direct(&bd.x)?, direct_y1: direct(&bd.y1()?)?, direct_y2: direct(&bd.y2()?)?, hat })
}

/// One dimension equality, per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCheck {
    pub label: String,
    pub degree: usize,
    pub restratified: usize,
    pub original: usize,
}

impl DimensionCheck {
    pub fn holds(&self) -> bool {
        self.restratified == self.original
    }
}

/// `I^{p̂}H_i(X̂) ≅ I^{p̄}H_i(X)` and `I^{q̂}H_i(X̂) ≅ I^{q̄}H_i(X, ∂X)` in
/// every degree; `X̂` is built on the first barycentric subdivision.
pub fn restratification_dims(x: &Space, p: &Perversity, q: &Perversity) -> Result<Vec<DimensionCheck>, SignatureError> {
    let sd = barycentric_subdivide(x)?;
    let r = restratify_boundary(&sd.space)?;
    let (p, q) = (&sd.transfer(x, p), &sd.transfer(x, q));
    let (ph, qh) = (r.lift_low(p), r.lift_high(q));
    let low_hat = build_complex(&r.space, &ph)?;
    let high_hat = build_complex(&r.space, &qh)?;
    let low = build_complex(x, p)?;
    let high = build_relative(x, x.boundary_mask(), q)?;
    let mut out = Vec::new();
    for i in 0..=x.dim() {
        out.push(DimensionCheck {
            label: "I^p".into(),
            degree: i,
            restratified: homology(&low_hat, i).dim(),
            original: homology(&low, i).dim(),
        });
        out.push(DimensionCheck {
            label: "I^q rel boundary".into(),
            degree: i,
            restratified: homology(&high_hat, i).dim(),
            original: homology(&high, i).dim(),
        });
    }
    Ok(out)
}
