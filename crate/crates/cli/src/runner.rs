//! Executes check groups over a resolved document.

use std::collections::HashMap;

use bspec_core::duality::{
    converse_dual_direct, converse_dual_inverse, duality_direct_to_inverse, duality_inverse_hom, shape_pools, Shape,
};
use bspec_core::family::Direction;
use bspec_core::gen::Gen;
use bspec_core::laws;
use bspec_core::limits::{
    cocone_mediator, cofinal_direct_iso, cofinal_inverse_iso, cone_mediator, product_inverse_morphism,
    product_limit_bijection, DirectLimit, InverseLimit,
};
use bspec_core::order::validate_cofinal;
use bspec_core::setoid::Setoid;
use bspec_core::spectrum::Spectrum;
use bspec_core::topology::BSpace;
use bspec_core::{Checks, Config, Outcome};
use thiserror::Error;

use crate::model::{lookup, Group, Model};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("no suite named `{0}`")]
    UnknownSuite(String),
    #[error("no {kind} named `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("spectrum `{0}` is {1:?}; the requested limit needs the other direction")]
    Direction(String, Direction),
    #[error("{0}")]
    Construction(String),
}

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub core: Config,
    /// Seed for randomized instances.
    pub seed: u64,
}

const DEFAULT_GROUPS: [Group; 8] = [
    Group::Setoid,
    Group::Directed,
    Group::Family,
    Group::Spectrum,
    Group::Cocone,
    Group::Cone,
    Group::Cofinal,
    Group::Pool,
];

/// Runs the named suite, or every object check when `suite` is `None`.
pub fn run(model: &Model, suite: Option<&str>, cfg: &RunConfig) -> Result<Report, RunError> {
    let (name, groups, random, products) = match suite {
        None => ("default".to_string(), DEFAULT_GROUPS.to_vec(), 0, Vec::new()),
        Some(n) => {
            let s = lookup(&model.suites, n).ok_or_else(|| RunError::UnknownSuite(n.into()))?;
            let groups = if s.run.is_empty() {
                DEFAULT_GROUPS.to_vec()
            } else {
                s.run.clone()
            };
            (n.to_string(), groups, s.random, s.products.clone())
        }
    };
    let mut r = Runner {
        model,
        cfg,
        suite: name,
        report: Report::default(),
        direct: HashMap::new(),
        inverse: HashMap::new(),
    };
    for g in groups {
        match g {
            Group::Setoid => r.setoids(),
            Group::Directed => r.directed(),
            Group::Family => r.families(),
            Group::Spectrum => r.spectra(),
            Group::Cocone => r.cocones(None),
            Group::Cone => r.cones(None),
            Group::Cofinal => {
                r.cofinals(None);
            }
            Group::Pool => {
                r.pools(None);
            }
            Group::Product => r.products(&products),
            Group::Random => r.random(random),
        }
    }
    Ok(r.report)
}

struct Runner<'a> {
    model: &'a Model,
    cfg: &'a RunConfig,
    suite: String,
    report: Report,
    direct: HashMap<String, Result<DirectLimit, String>>,
    inverse: HashMap<String, Result<InverseLimit, String>>,
}

impl Runner<'_> {
    fn add(&mut self, subject: &str, prefix: &str, checks: &Checks) {
        self.report.extend(&self.suite, subject, prefix, checks);
    }

    fn spectrum(&self, name: &str) -> &Spectrum {
        &lookup(&self.model.spectra, name).expect("resolved").spectrum
    }

    fn direct_limit(&mut self, name: &str) -> Result<&DirectLimit, String> {
        if !self.direct.contains_key(name) {
            let l = DirectLimit::new(self.spectrum(name), &self.cfg.core).map_err(|e| e.to_string());
            self.direct.insert(name.to_string(), l);
        }
        self.direct[name].as_ref().map_err(Clone::clone)
    }

    fn inverse_limit(&mut self, name: &str) -> Result<&InverseLimit, String> {
        if !self.inverse.contains_key(name) {
            let l = InverseLimit::new(self.spectrum(name), &self.cfg.core).map_err(|e| e.to_string());
            self.inverse.insert(name.to_string(), l);
        }
        self.inverse[name].as_ref().map_err(Clone::clone)
    }

    fn setoids(&mut self) {
        for (n, s) in &self.model.setoids {
            self.add(n, "", &laws::setoid_laws(s));
        }
    }

    fn directed(&mut self) {
        for (n, d) in &self.model.directed {
            self.add(n, "", &laws::directed_laws(d));
        }
    }

    fn families(&mut self) {
        for (n, (_, f)) in &self.model.families {
            self.add(n, "", &laws::family_laws(f));
        }
    }

    fn spectra(&mut self) {
        for (n, decl) in &self.model.spectra {
            let c = laws::spectrum_laws(&decl.spectrum, &self.cfg.core);
            self.add(n, "", &c);
        }
    }

    fn cocones(&mut self, over: Option<&str>) {
        let cfg = self.cfg.core.clone();
        for (n, decl) in self
            .model
            .cocones
            .iter()
            .filter(|(_, d)| over.is_none_or(|o| o == d.spectrum))
        {
            let checks = match self.direct_limit(&decl.spectrum) {
                Err(e) => failed("limit builds", e),
                Ok(l) => match cocone_mediator(l, &decl.cocone, &cfg) {
                    Ok(m) => m.checks,
                    Err(e) => failed("cocone is well formed", e.to_string()),
                },
            };
            self.add(n, "", &checks);
        }
    }

    fn cones(&mut self, over: Option<&str>) {
        let cfg = self.cfg.core.clone();
        for (n, decl) in self
            .model
            .cones
            .iter()
            .filter(|(_, d)| over.is_none_or(|o| o == d.spectrum))
        {
            let checks = match self.inverse_limit(&decl.spectrum) {
                Err(e) => failed("limit builds", e),
                Ok(l) => match cone_mediator(l, &decl.cone, &cfg) {
                    Ok(m) => m.checks,
                    Err(e) => failed("cone is well formed", e.to_string()),
                },
            };
            self.add(n, "", &checks);
        }
    }

    /// Cofinal subsets, each against every spectrum over its index. Returns
    /// one class-count line per isomorphism.
    fn cofinals(&mut self, only: Option<&str>) -> Vec<String> {
        let mut lines = Vec::new();
        for (n, decl) in &self.model.cofinals {
            if only.is_some_and(|o| o != n) {
                continue;
            }
            let d = lookup(&self.model.directed, &decl.index).expect("resolved");
            let mut c = Checks::new();
            c.empty("cofinal laws", &validate_cofinal(d, &decl.subset));
            self.add(n, "", &c);
            for (sn, sd) in self.model.spectra.iter().filter(|(_, sd)| sd.index == decl.index) {
                let r = match sd.spectrum.direction() {
                    Direction::Covariant => cofinal_direct_iso(&sd.spectrum, &decl.subset, &self.cfg.core),
                    Direction::Contravariant => cofinal_inverse_iso(&sd.spectrum, &decl.subset, &self.cfg.core),
                };
                let subject = format!("{n}/{sn}");
                match r {
                    Ok(iso) => {
                        lines.push(format!(
                            "{subject}: {} classes over the subset, {} over the index",
                            iso.first.carrier().num_classes(),
                            iso.second.carrier().num_classes()
                        ));
                        self.add(&subject, "", &iso.checks);
                    }
                    Err(e) => self.add(&subject, "", &failed("isomorphism builds", e.to_string())),
                }
            }
        }
        lines
    }

    /// Duality and converse-dual checks per pool, with side cardinalities.
    fn pools(&mut self, only: Option<&str>) -> Vec<String> {
        let mut lines = Vec::new();
        let cfg = &self.cfg.core;
        for (n, decl) in &self.model.pools {
            if only.is_some_and(|o| o != n) {
                continue;
            }
            let s = self.spectrum(&decl.spectrum).clone();
            let fixed = &lookup(&self.model.spaces, &decl.fixed).expect("resolved").space;
            let (first, second) = match s.direction() {
                Direction::Covariant => ((Shape::IntoFixed, "duality"), (Shape::FromFixed, "converse dual")),
                Direction::Contravariant => (
                    (Shape::FromFixedDual, "duality"),
                    (Shape::IntoFixedDual, "converse dual"),
                ),
            };
            for (shape, prefix) in [first, second] {
                let r = shape_pools(&s, fixed, shape, cfg).and_then(|pools| match shape {
                    Shape::IntoFixed => duality_direct_to_inverse(&s, fixed, pools, cfg),
                    Shape::FromFixed => converse_dual_direct(&s, fixed, pools, cfg),
                    Shape::FromFixedDual => duality_inverse_hom(&s, fixed, pools, cfg),
                    Shape::IntoFixedDual => converse_dual_inverse(&s, fixed, pools, cfg),
                });
                match r {
                    Ok(rep) => {
                        lines.push(format!(
                            "{n}: {prefix}: {} classes on the left, {} on the right",
                            rep.sizes.0, rep.sizes.1
                        ));
                        self.report.extend(&self.suite, n, prefix, &rep.checks);
                    }
                    Err(e) => self
                        .report
                        .extend(&self.suite, n, prefix, &failed("construction", e.to_string())),
                }
            }
        }
        lines
    }

    fn products(&mut self, pairs: &[(String, String)]) {
        for (a, b) in pairs {
            let (s, t) = (self.spectrum(a), self.spectrum(b));
            let subject = format!("{a} x {b}");
            let r = match s.direction() {
                Direction::Covariant => product_limit_bijection(s, t, &self.cfg.core),
                Direction::Contravariant => product_inverse_morphism(s, t, &self.cfg.core),
            };
            let checks = match r {
                Ok(p) => {
                    let mut c = p.checks;
                    let (st, sa, sb) = p.sizes;
                    c.expect("class counts multiply", st == sa * sb, || {
                        format!("{st} != {sa} * {sb}")
                    });
                    c
                }
                Err(e) => failed("product builds", e.to_string()),
            };
            self.add(&subject, "", &checks);
        }
    }

    /// Seeded random instances, one aggregated record per law.
    fn random(&mut self, count: usize) {
        let cfg = &self.cfg.core;
        let mut g = Gen::new(self.cfg.seed);
        let mut agg = Aggregate::default();
        for k in 0..count {
            let d = g.index(4);
            let f = g.direct_family(&d, Direction::Covariant);
            agg.add(k, "family", &laws::family_laws(&f));
            let dir = g.direction();
            let s = g.small_spectrum(4, dir, 6);
            agg.add(k, "spectrum", &laws::spectrum_laws(&s, cfg));
            match dir {
                Direction::Covariant => {
                    if let Ok(l) = DirectLimit::new(&s, cfg) {
                        let c = g.cocone(&l, 4);
                        let checks = cocone_mediator(&l, &c, cfg)
                            .map(|m| m.checks)
                            .unwrap_or_else(|e| failed("cocone is well formed", e.to_string()));
                        agg.add(k, "cocone", &checks);
                    }
                }
                Direction::Contravariant => {
                    if let Ok(l) = InverseLimit::new(&s, cfg) {
                        if let Some(c) = g.cone(&l, 4) {
                            let checks = cone_mediator(&l, &c, cfg)
                                .map(|m| m.checks)
                                .unwrap_or_else(|e| failed("cone is well formed", e.to_string()));
                            agg.add(k, "cone", &checks);
                        }
                    }
                }
            }
        }
        for (law, outcome) in agg.0 {
            let (subject, law) = law.split_once('\u{0}').expect("keyed by subject");
            self.report
                .push(&self.suite, &format!("random {subject}"), law, &outcome);
        }
    }
}

fn failed(law: &str, why: impl Into<String>) -> Checks {
    let mut c = Checks::new();
    c.fail(law, why);
    c
}

/// Per-law outcomes over many instances: the first failure wins, and a law
/// is skipped only if it was skipped everywhere.
#[derive(Default)]
struct Aggregate(Vec<(String, Outcome)>);

impl Aggregate {
    fn add(&mut self, instance: usize, subject: &str, checks: &Checks) {
        for c in checks.iter() {
            let key = format!("{subject}\u{0}{}", c.law);
            let pos = match self.0.iter().position(|(k, _)| *k == key) {
                Some(p) => p,
                None => {
                    self.0.push((key, Outcome::Skipped(String::new())));
                    self.0.len() - 1
                }
            };
            let slot = &mut self.0[pos].1;
            match (&*slot, &c.outcome) {
                (Outcome::Fail(_), _) => {}
                (_, Outcome::Fail(w)) => *slot = Outcome::Fail(format!("instance {instance}: {w}")),
                (_, Outcome::Pass) => *slot = Outcome::Pass,
                (Outcome::Skipped(s), Outcome::Skipped(w)) if s.is_empty() => {
                    *slot = Outcome::Skipped(format!("instance {instance}: {w}"))
                }
                _ => {}
            }
        }
    }
}

/// The limit of one spectrum: an export of its classes and generators, and
/// the checks for the spectrum and every cocone or cone over it.
pub fn limit(model: &Model, name: &str, direct: bool, cfg: &RunConfig) -> Result<(String, Report), RunError> {
    let decl = lookup(&model.spectra, name).ok_or_else(|| RunError::Unknown {
        kind: "spectrum",
        name: name.into(),
    })?;
    let s = &decl.spectrum;
    let want = if direct {
        Direction::Covariant
    } else {
        Direction::Contravariant
    };
    if s.direction() != want {
        return Err(RunError::Direction(name.into(), s.direction()));
    }
    let fam = s.family();
    let label = |i: usize, x: usize| format!("{}.{}", s.index().base().label(i), fam.carrier(i).label(x));
    let mut r = Runner {
        model,
        cfg,
        suite: "limit".into(),
        report: Report::default(),
        direct: HashMap::new(),
        inverse: HashMap::new(),
    };
    let out = if direct {
        let l = r.direct_limit(name).map_err(RunError::Construction)?;
        let labels: Vec<String> = (0..l.carrier().len())
            .map(|p| {
                let (i, x) = l.point(p);
                label(i, x)
            })
            .collect();
        let head = format!("direct limit of {name}: {} classes", l.carrier().num_classes());
        export(&head, name, l.carrier(), &labels, l.space())
    } else {
        let l = r.inverse_limit(name).map_err(RunError::Construction)?;
        let labels: Vec<String> = (0..l.elems().len()).map(|k| format!("e{k}")).collect();
        let mut head = format!("inverse limit of {name}: {} elements", l.carrier().num_classes());
        for (k, e) in l.elems().iter().enumerate() {
            let comps: Vec<String> = e.iter().enumerate().map(|(i, &x)| label(i, x)).collect();
            head.push_str(&format!("\n# e{k} = {}", comps.join(" ")));
        }
        export(&head, name, l.carrier(), &labels, l.space())
    };
    r.add(name, "", &laws::spectrum_laws(s, &cfg.core));
    if direct {
        r.cocones(Some(name));
    } else {
        r.cones(Some(name));
    }
    Ok((out, r.report))
}

/// A limit as `setoid` and `subbase` blocks that parse back.
fn export(head: &str, name: &str, carrier: &Setoid, labels: &[String], space: &BSpace) -> String {
    let mut out = format!(
        "# {head}\n\nsetoid LIM_{name} {{\n    elements: {}\n",
        labels.join(", ")
    );
    let equal: Vec<String> = (0..carrier.len())
        .filter(|&x| carrier.rep(x) != x)
        .map(|x| format!("{} = {}", labels[carrier.rep(x)], labels[x]))
        .collect();
    if !equal.is_empty() {
        out.push_str(&format!("    equal: {}\n", equal.join(", ")));
    }
    out.push_str(&format!("}}\n\nsubbase LIM_{name}_TOP {{\n    carrier: LIM_{name}\n"));
    for (k, g) in space.generators().iter().enumerate() {
        let pairs: Vec<String> = g
            .values()
            .iter()
            .zip(labels)
            .map(|(v, l)| format!("{l} => {v}"))
            .collect();
        out.push_str(&format!("    gen t{k}: {}\n", pairs.join(", ")));
    }
    out.push_str("}\n\n");
    out
}

/// The cofinality isomorphisms for one subset, or the duality checks for
/// one pool, with summary lines.
pub fn iso(
    model: &Model,
    cofinal: Option<&str>,
    pool: Option<&str>,
    cfg: &RunConfig,
) -> Result<(String, Report), RunError> {
    let mut r = Runner {
        model,
        cfg,
        suite: "iso".into(),
        report: Report::default(),
        direct: HashMap::new(),
        inverse: HashMap::new(),
    };
    let lines = match (cofinal, pool) {
        (Some(c), _) => {
            if lookup(&model.cofinals, c).is_none() {
                return Err(RunError::Unknown {
                    kind: "cofinal subset",
                    name: c.into(),
                });
            }
            r.cofinals(Some(c))
        }
        (None, Some(p)) => {
            if lookup(&model.pools, p).is_none() {
                return Err(RunError::Unknown {
                    kind: "pool",
                    name: p.into(),
                });
            }
            r.pools(Some(p))
        }
        (None, None) => Vec::new(),
    };
    let mut out = String::new();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    Ok((out, r.report))
}
