//! The Leech lattice as an ambient space: Golay code, shells, bases,
//! affine symmetries and a constraint search for isometries.

mod basis;
mod cache;
mod config;
mod golay;
mod lattice;
mod search;
mod symmetry;

pub use basis::Basis;
pub use cache::{cache_path, read_shell, write_shell, FORMAT_VERSION};
pub use config::{
    equivalent_configurations, extension_nodes, find_configuration, kondo_configuration, realized_automorphisms,
    setwise_stabilizer_order, PointConfiguration, Selector,
};
pub use golay::GolayCode;
pub use lattice::{
    dot8_mixed, dot8_shell, edge_order, generate_shell, is_lattice_vector, LeechPoint, ShellVec,
};
pub use symmetry::AffineSymmetry;

use crate::error::{Error, Result};
use search::{Dfs, Frame};
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

/// Default node budget for a single backtracking search.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Expected shell sizes.
pub const SHELL4_SIZE: usize = 196_560;
pub const SHELL6_SIZE: usize = 16_773_120;

/// Pointwise stabilizer of a configuration in `Λ.Aut(Λ)`.
#[derive(Clone, Debug)]
pub struct StabilizerInfo {
    pub order: u128,
    pub generators: Vec<AffineSymmetry>,
}

pub struct Leech {
    code: GolayCode,
    shell4: Vec<ShellVec>,
    index4: HashMap<ShellVec, u32>,
    basis: Basis,
    shell6: OnceLock<Vec<ShellVec>>,
    cache_dir: Option<PathBuf>,
    budget: u64,
    frames: Mutex<HashMap<Vec<LeechPoint>, Arc<Frame>>>,
}

impl std::fmt::Debug for Leech {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Leech")
            .field("cache_dir", &self.cache_dir)
            .field("budget", &self.budget)
            .finish()
    }
}

impl Leech {
    /// Build the code and the norm-4 shell. The norm-6 shell is produced on
    /// first use, through the cache directory if one is given.
    pub fn new(cache_dir: Option<PathBuf>) -> Result<Leech> {
        let code = GolayCode::new()?;
        let shell4 = generate_shell(&code, 4);
        if shell4.len() != SHELL4_SIZE {
            return Err(Error::invalid(format!(
                "norm-4 shell has {} vectors",
                shell4.len()
            )));
        }
        let index4 = shell4
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let basis = Basis::from_candidates(&shell4)?;
        Ok(Leech {
            code,
            shell4,
            index4,
            basis,
            shell6: OnceLock::new(),
            cache_dir,
            budget: DEFAULT_BUDGET,
            frames: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn code(&self) -> &GolayCode {
        &self.code
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn shell4(&self) -> &[ShellVec] {
        &self.shell4
    }

    pub fn shell4_index(&self, v: &ShellVec) -> Option<u32> {
        self.index4.get(v).copied()
    }

    /// The norm-6 shell, loaded from the cache or generated.
    pub fn shell6(&self) -> Result<&[ShellVec]> {
        if let Some(s) = self.shell6.get() {
            return Ok(s);
        }
        let fp = self.code.fingerprint();
        let mut loaded = None;
        if let Some(dir) = &self.cache_dir {
            let path = cache_path(dir, 6);
            match read_shell(&path, 6, fp) {
                Ok(Some(v)) if v.len() == SHELL6_SIZE => {
                    log::info!("loaded norm-6 shell from {}", path.display());
                    loaded = Some(v);
                }
                Ok(_) => {}
                Err(e) => log::warn!("ignoring shell cache: {e}"),
            }
        }
        let shell = match loaded {
            Some(v) => v,
            None => {
                log::info!("generating norm-6 shell");
                let v = generate_shell(&self.code, 6);
                if v.len() != SHELL6_SIZE {
                    return Err(Error::invalid(format!("norm-6 shell has {} vectors", v.len())));
                }
                if let Some(dir) = &self.cache_dir {
                    let path = cache_path(dir, 6);
                    if let Err(e) = write_shell(&path, 6, fp, &v) {
                        log::warn!("could not write shell cache {}: {e}", path.display());
                    }
                }
                v
            }
        };
        Ok(self.shell6.get_or_init(|| shell))
    }

    pub fn is_lattice_point(&self, p: &LeechPoint) -> bool {
        is_lattice_vector(&self.code, &p.0)
    }

    fn frame(&self, src: &[LeechPoint]) -> Result<Arc<Frame>> {
        let key = src.to_vec();
        if let Some(f) = self.frames.lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let u: Vec<LeechPoint> = src[1..].iter().map(|p| p.sub(&src[0])).collect();
        let f = Arc::new(Frame::new(&self.shell4, &u)?);
        self.frames.lock().unwrap().insert(key, f.clone());
        Ok(f)
    }

    fn check_points(&self, pts: &[LeechPoint]) -> Result<()> {
        if pts.is_empty() {
            return Err(Error::invalid("empty configuration"));
        }
        if let Some(p) = pts.iter().find(|p| !self.is_lattice_point(p)) {
            return Err(Error::invalid(format!("{p:?} is not a Leech lattice point")));
        }
        Ok(())
    }

    fn symmetry_from(
        &self,
        frame: &Frame,
        a: &search::Assignment,
        p0: &LeechPoint,
        q0: &LeechPoint,
    ) -> Result<AffineSymmetry> {
        let images = self
            .basis
            .rows
            .iter()
            .map(|e| {
                let v = frame.image(&self.shell4, a, e);
                let mut s = [0i8; 24];
                for k in 0..24 {
                    s[k] = i8::try_from(v[k]).map_err(|_| Error::invalid("image not in shell"))?;
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut g = AffineSymmetry {
            images,
            translation: LeechPoint::ZERO,
        };
        g.translation = q0.sub(&g.linear(&self.basis, p0));
        g.verify(&self.basis, &self.code)?;
        Ok(g)
    }

    /// Some `γ ∈ Λ.Aut(Λ)` with `γ(src[i]) = dst[i]` for all `i`.
    pub fn realize(&self, src: &[LeechPoint], dst: &[LeechPoint]) -> Result<Option<AffineSymmetry>> {
        self.check_points(src)?;
        self.check_points(dst)?;
        if src.len() != dst.len() {
            return Ok(None);
        }
        for i in 0..src.len() {
            for j in i + 1..src.len() {
                if src[i].dist2(&src[j]) != dst[i].dist2(&dst[j]) {
                    return Ok(None);
                }
            }
        }
        let frame = self.frame(src)?;
        let w: Vec<LeechPoint> = dst[1..].iter().map(|p| p.sub(&dst[0])).collect();
        let doms = frame.domains(&self.shell4, &w);
        let mut dfs = Dfs::new(&self.shell4, &frame.basis, self.budget, "isometry search");
        let Some(a) = dfs.first(doms)? else {
            return Ok(None);
        };
        let g = self.symmetry_from(&frame, &a, &src[0], &dst[0])?;
        for (s, d) in src.iter().zip(dst) {
            if g.apply(&self.basis, s) != *d {
                return Err(Error::invalid("realized symmetry does not map the points"));
            }
        }
        Ok(Some(g))
    }

    /// Order and generators of the pointwise stabilizer of `pts`.
    pub fn pointwise_stabilizer(&self, pts: &[LeechPoint]) -> Result<StabilizerInfo> {
        self.check_points(pts)?;
        let frame = self.frame(pts)?;
        let st = search::pointwise_stabilizer(&self.shell4, &self.index4, &frame, self.budget)?;
        let generators = st
            .generators
            .iter()
            .map(|a| self.symmetry_from(&frame, a, &pts[0], &pts[0]))
            .collect::<Result<Vec<_>>>()?;
        for g in &generators {
            for p in pts {
                if g.apply(&self.basis, p) != *p {
                    return Err(Error::invalid("stabilizer generator moves a point"));
                }
            }
        }
        Ok(StabilizerInfo {
            order: st.order,
            generators,
        })
    }

    /// Number of symmetries extending `src[i] ↦ dst[i]`: zero, or the order
    /// of the pointwise stabilizer of `src`.
    pub fn extension_count(&self, src: &[LeechPoint], dst: &[LeechPoint]) -> Result<u128> {
        if self.realize(src, dst)?.is_none() {
            return Ok(0);
        }
        Ok(self.pointwise_stabilizer(src)?.order)
    }

    pub fn apply(&self, g: &AffineSymmetry, p: &LeechPoint) -> LeechPoint {
        g.apply(&self.basis, p)
    }

    pub fn compose(&self, g: &AffineSymmetry, h: &AffineSymmetry) -> AffineSymmetry {
        g.compose(&self.basis, h)
    }

    pub fn inverse(&self, g: &AffineSymmetry) -> AffineSymmetry {
        g.inverse(&self.basis)
    }

    pub fn identity(&self) -> AffineSymmetry {
        AffineSymmetry::identity(&self.basis)
    }
}
