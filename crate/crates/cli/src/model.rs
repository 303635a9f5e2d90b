//! Resolution of a parsed document into checked mathematical objects.

use std::collections::HashMap;

use bspec_core::family::{DirectFamily, Direction};
use bspec_core::limits::{Cocone, Cone};
use bspec_core::order::{CofinalSubset, DirectedIndex};
use bspec_core::setoid::{Setoid, SetoidFn};
use bspec_core::spectrum::{auto_witness, Spectrum};
use bspec_core::topology::{synthesize_witness, BSpace, BicExpr, Certificate, MorphismWitness, RFun, Q};
use num_bigint::BigInt;

use crate::syntax::{Atom, Block, BlockKind, Document, Entry, Item, ParseError, Span, Sym};

/// Declarations in document order.
pub type Named<T> = Vec<(String, T)>;

pub fn lookup<'a, T>(xs: &'a Named<T>, name: &str) -> Option<&'a T> {
    xs.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

#[derive(Debug, Clone)]
pub struct SpaceDecl {
    pub space: BSpace,
    pub gen_names: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SpectrumDecl {
    pub index: String,
    pub spectrum: Spectrum,
}

#[derive(Debug, Clone)]
pub struct CofinalDecl {
    pub index: String,
    pub subset: CofinalSubset,
}

#[derive(Debug, Clone)]
pub struct CoconeDecl {
    pub spectrum: String,
    pub cocone: Cocone,
}

#[derive(Debug, Clone)]
pub struct ConeDecl {
    pub spectrum: String,
    pub cone: Cone,
}

#[derive(Debug, Clone)]
pub struct PoolDecl {
    pub spectrum: String,
    pub fixed: String,
}

/// Groups of checks a suite can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Setoid,
    Directed,
    Family,
    Spectrum,
    Cocone,
    Cone,
    Cofinal,
    Pool,
    Product,
    Random,
}

impl Group {
    pub const ALL: [Group; 10] = [
        Group::Setoid,
        Group::Directed,
        Group::Family,
        Group::Spectrum,
        Group::Cocone,
        Group::Cone,
        Group::Cofinal,
        Group::Pool,
        Group::Product,
        Group::Random,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Group::Setoid => "setoid",
            Group::Directed => "directed",
            Group::Family => "family",
            Group::Spectrum => "spectrum",
            Group::Cocone => "cocone",
            Group::Cone => "cone",
            Group::Cofinal => "cofinal",
            Group::Pool => "pool",
            Group::Product => "product",
            Group::Random => "random",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteDecl {
    pub run: Vec<Group>,
    pub random: usize,
    pub products: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct Model {
    pub setoids: Named<Setoid>,
    pub directed: Named<DirectedIndex>,
    pub families: Named<(String, DirectFamily)>,
    pub spaces: Named<SpaceDecl>,
    pub spectra: Named<SpectrumDecl>,
    pub cofinals: Named<CofinalDecl>,
    pub cocones: Named<CoconeDecl>,
    pub cones: Named<ConeDecl>,
    pub pools: Named<PoolDecl>,
    pub suites: Named<SuiteDecl>,
}

fn mismatch(at: Span, expected: &str, found: impl std::fmt::Display) -> ParseError {
    ParseError::TypeMismatch {
        at,
        expected: expected.into(),
        found: found.to_string(),
    }
}

fn invalid(at: Span, e: impl std::fmt::Display) -> ParseError {
    ParseError::Invalid {
        at,
        message: e.to_string(),
    }
}

fn show(atoms: &[Atom]) -> String {
    atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
}

fn single_word(item: &Item, what: &str) -> Result<String, ParseError> {
    match item.atoms.as_slice() {
        [Atom::Word(w, _)] => Ok(w.clone()),
        other => Err(mismatch(item.span, what, format!("`{}`", show(other)))),
    }
}

fn words(e: &Entry, what: &str) -> Result<Vec<String>, ParseError> {
    e.value.iter().map(|i| single_word(i, what)).collect()
}

/// Items of the form `a <sym> b`.
fn pairs(e: &Entry, sym: Sym, what: &str) -> Result<Vec<(String, String)>, ParseError> {
    e.value
        .iter()
        .map(|i| match i.atoms.as_slice() {
            [Atom::Word(a, _), Atom::Sym(s, _), Atom::Word(b, _)] if *s == sym => Ok((a.clone(), b.clone())),
            other => Err(mismatch(i.span, what, format!("`{}`", show(other)))),
        })
        .collect()
}

fn parse_rational(w: &str, at: Span) -> Result<Q, ParseError> {
    let bad = || mismatch(at, "rational `n` or `n/d`", format!("`{w}`"));
    let (n, d) = match w.split_once('/') {
        Some((n, d)) => (n, d),
        None => (w, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn parse_count(w: &str, at: Span) -> Result<usize, ParseError> {
    w.parse().map_err(|_| mismatch(at, "natural number", format!("`{w}`")))
}

fn parse_direction(e: &Entry) -> Result<Direction, ParseError> {
    let item = e
        .value
        .first()
        .ok_or_else(|| mismatch(e.span, "direction", "nothing"))?;
    match single_word(item, "direction")?.as_str() {
        "covariant" => Ok(Direction::Covariant),
        "contravariant" => Ok(Direction::Contravariant),
        other => Err(mismatch(
            item.span,
            "`covariant` or `contravariant`",
            format!("`{other}`"),
        )),
    }
}

/// Parses `(gen f)`, `(const q)`, `(add c c)` and `(bic φ c)`.
pub fn parse_certificate(a: &Atom, gen_names: &[String]) -> Result<Certificate, ParseError> {
    let what = "certificate `(gen f)`, `(const q)`, `(add c c)` or `(bic φ c)`";
    let Atom::List(xs, at) = a else {
        return Err(mismatch(a.span(), what, format!("`{a}`")));
    };
    match xs.as_slice() {
        [Atom::Word(h, _), Atom::Word(g, gat)] if h == "gen" => match gen_names.iter().position(|n| n == g) {
            Some(k) => Ok(Certificate::gen(k)),
            None => match g.parse::<usize>() {
                Ok(k) if k < gen_names.len() => Ok(Certificate::gen(k)),
                _ => Err(ParseError::UnresolvedReference {
                    at: *gat,
                    kind: "generator".into(),
                    name: g.clone(),
                }),
            },
        },
        [Atom::Word(h, _), Atom::Word(q, qat)] if h == "const" => Ok(Certificate::Const(parse_rational(q, *qat)?)),
        [Atom::Word(h, _), x, y] if h == "add" => Ok(Certificate::add(
            parse_certificate(x, gen_names)?,
            parse_certificate(y, gen_names)?,
        )),
        [Atom::Word(h, _), phi, c] if h == "bic" => {
            Ok(Certificate::bic(parse_bic(phi)?, parse_certificate(c, gen_names)?))
        }
        _ => Err(mismatch(*at, what, format!("`{a}`"))),
    }
}

/// Parses `id` and `(const q)`, `(add φ ψ)`, `(mul φ ψ)`, `(neg φ)`,
/// `(abs φ)`, `(max φ ψ)`, `(min φ ψ)`, `(comp φ ψ)`.
pub fn parse_bic(a: &Atom) -> Result<BicExpr, ParseError> {
    let what = "continuous-function expression";
    match a {
        Atom::Word(w, _) if w == "id" => Ok(BicExpr::Id),
        Atom::List(xs, at) => match xs.as_slice() {
            [Atom::Word(h, _), Atom::Word(q, qat)] if h == "const" => Ok(BicExpr::constant(parse_rational(q, *qat)?)),
            [Atom::Word(h, _), x] => {
                let x = parse_bic(x)?;
                match h.as_str() {
                    "neg" => Ok(BicExpr::neg(x)),
                    "abs" => Ok(BicExpr::abs(x)),
                    _ => Err(mismatch(*at, what, format!("`{a}`"))),
                }
            }
            [Atom::Word(h, _), x, y] => {
                let (x, y) = (parse_bic(x)?, parse_bic(y)?);
                match h.as_str() {
                    "add" => Ok(BicExpr::add(x, y)),
                    "mul" => Ok(BicExpr::mul(x, y)),
                    "max" => Ok(BicExpr::max(x, y)),
                    "min" => Ok(BicExpr::min(x, y)),
                    "comp" => Ok(BicExpr::comp(x, y)),
                    _ => Err(mismatch(*at, what, format!("`{a}`"))),
                }
            }
            _ => Err(mismatch(*at, what, format!("`{a}`"))),
        },
        _ => Err(mismatch(a.span(), what, format!("`{a}`"))),
    }
}

struct Resolver<'a> {
    kinds: HashMap<&'a str, (BlockKind, Span)>,
    model: Model,
    depth: usize,
}

impl<'a> Resolver<'a> {
    /// Checks that `name` refers to a block of kind `kind`.
    fn reference(&self, name: &str, kind: BlockKind, at: Span) -> Result<(), ParseError> {
        match self.kinds.get(name) {
            None => Err(ParseError::UnresolvedReference {
                at,
                kind: kind.to_string(),
                name: name.into(),
            }),
            Some((k, _)) if *k != kind => Err(mismatch(at, &format!("{kind} name"), format!("{k} `{name}`"))),
            Some(_) => Ok(()),
        }
    }

    fn ref_entry(&self, b: &Block, key: &str, kind: BlockKind) -> Result<(String, Span), ParseError> {
        let e = required(b, key)?;
        let item = one_item(e)?;
        let name = single_word(item, &format!("{kind} name"))?;
        self.reference(&name, kind, item.span)?;
        Ok((name, item.span))
    }

    fn index_of(&self, d: &DirectedIndex, label: &str, at: Span) -> Result<usize, ParseError> {
        d.base().index_of(label).ok_or_else(|| ParseError::UnresolvedReference {
            at,
            kind: "index element".into(),
            name: label.into(),
        })
    }

    /// `i <= j` as entry arguments.
    fn order_args(&self, d: &DirectedIndex, e: &Entry) -> Result<(usize, usize), ParseError> {
        match e.args.as_slice() {
            [Atom::Word(i, iat), Atom::Sym(Sym::Le, _), Atom::Word(j, jat)] => {
                Ok((self.index_of(d, i, *iat)?, self.index_of(d, j, *jat)?))
            }
            other => Err(mismatch(e.span, "arguments `i <= j`", format!("`{}`", show(other)))),
        }
    }

    fn index_arg(&self, d: &DirectedIndex, e: &Entry) -> Result<usize, ParseError> {
        match e.args.as_slice() {
            [Atom::Word(i, iat)] => self.index_of(d, i, *iat),
            other => Err(mismatch(
                e.span,
                "an index element argument",
                format!("`{}`", show(other)),
            )),
        }
    }

    fn setoid(&mut self, b: &Block) -> Result<(), ParseError> {
        let labels = words(required(b, "elements")?, "element label")?;
        let eq = match optional(b, "equal") {
            Some(e) => pairs(e, Sym::Eq, "equation `a = b`")?,
            None => Vec::new(),
        };
        let s = Setoid::new(&labels, &eq).map_err(|e| invalid(b.span, e))?;
        self.model.setoids.push((b.name.clone(), s));
        Ok(())
    }

    fn directed(&mut self, b: &Block) -> Result<(), ParseError> {
        let labels = words(required(b, "elements")?, "element label")?;
        let eq = match optional(b, "equal") {
            Some(e) => pairs(e, Sym::Eq, "equation `a = b`")?,
            None => Vec::new(),
        };
        let base = Setoid::new(&labels, &eq).map_err(|e| invalid(b.span, e))?;
        let order_entry = optional(b, "order");
        let order = match order_entry {
            Some(e) => pairs(e, Sym::Le, "order pair `i <= j`")?,
            None => Vec::new(),
        };
        let mut idx = Vec::new();
        for (k, (i, j)) in order.iter().enumerate() {
            let at = order_entry.map(|e| e.value[k].span).unwrap_or(b.span);
            idx.push((self.index_label(&base, i, at)?, self.index_label(&base, j, at)?));
        }
        let closure = match optional(b, "closure") {
            None => true,
            Some(e) => {
                let item = one_item(e)?;
                match single_word(item, "closure mode")?.as_str() {
                    "auto" => true,
                    "none" => false,
                    other => return Err(mismatch(item.span, "`auto` or `none`", format!("`{other}`"))),
                }
            }
        };
        let d = DirectedIndex::new(base, &idx, closure, None).map_err(|e| invalid(b.span, e))?;
        self.model.directed.push((b.name.clone(), d));
        Ok(())
    }

    fn index_label(&self, base: &Setoid, label: &str, at: Span) -> Result<usize, ParseError> {
        base.index_of(label).ok_or_else(|| ParseError::UnresolvedReference {
            at,
            kind: "index element".into(),
            name: label.into(),
        })
    }

    fn family(&mut self, b: &Block) -> Result<(), ParseError> {
        let (index_name, _) = self.ref_entry(b, "index", BlockKind::Directed)?;
        let d = lookup(&self.model.directed, &index_name).expect("resolved").clone();
        let dir = parse_direction(required(b, "direction")?)?;
        let n = d.len();
        let mut carriers: Vec<Option<Setoid>> = vec![None; n];
        for e in b.entries.iter().filter(|e| e.key == "carrier") {
            let i = self.index_arg(&d, e)?;
            let s = match e.value.as_slice() {
                [Item { atoms, span }] if matches!(atoms.as_slice(), [Atom::Word(k, _), Atom::Word(_, _)] if k == "setoid") =>
                {
                    let name = atoms[1].word().expect("matched").to_string();
                    self.reference(&name, BlockKind::Setoid, *span)?;
                    lookup(&self.model.setoids, &name).expect("resolved").clone()
                }
                _ => {
                    let labels = words(e, "element label")?;
                    let eq: Vec<(String, String)> = match b
                        .entries
                        .iter()
                        .find(|q| q.key == "equal" && self.index_arg(&d, q).ok() == Some(i))
                    {
                        Some(q) => pairs(q, Sym::Eq, "equation `a = b`")?,
                        None => Vec::new(),
                    };
                    Setoid::new(&labels, &eq).map_err(|err| invalid(e.span, err))?
                }
            };
            carriers[i] = Some(s);
        }
        let carriers = carriers
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| invalid(b.span, format!("no carrier for index element `{}`", d.base().label(i))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut given = Vec::new();
        for e in b.entries.iter().filter(|e| e.key == "map") {
            let (i, j) = self.order_args(&d, e)?;
            let (src, dst) = match dir {
                Direction::Covariant => (i, j),
                Direction::Contravariant => (j, i),
            };
            let ps = pairs(e, Sym::Arrow, "map pair `x => y`")?;
            let f = SetoidFn::from_labels(carriers[src].clone(), carriers[dst].clone(), &ps)
                .map_err(|err| invalid(e.span, err))?;
            given.push(((i, j), f));
        }
        let fam = DirectFamily::new(d, dir, carriers, given).map_err(|e| invalid(b.span, e))?;
        self.model.families.push((b.name.clone(), (index_name, fam)));
        Ok(())
    }

    fn subbase(&mut self, b: &Block) -> Result<(), ParseError> {
        let e = required(b, "carrier")?;
        let item = one_item(e)?;
        let carrier = match item.atoms.as_slice() {
            [Atom::Word(s, at)] => {
                self.reference(s, BlockKind::Setoid, *at)?;
                lookup(&self.model.setoids, s).expect("resolved").clone()
            }
            [Atom::Word(f, at), Atom::Word(i, iat)] => {
                self.reference(f, BlockKind::Family, *at)?;
                let (_, fam) = lookup(&self.model.families, f).expect("resolved");
                let k = self.index_of(fam.index(), i, *iat)?;
                fam.carrier(k).clone()
            }
            other => {
                return Err(mismatch(
                    item.span,
                    "setoid name or `FAMILY index`",
                    format!("`{}`", show(other)),
                ))
            }
        };
        let mut gens = Vec::new();
        let mut names = Vec::new();
        for e in b.entries.iter().filter(|e| e.key == "gen") {
            let name = match e.args.as_slice() {
                [Atom::Word(n, _)] => n.clone(),
                other => return Err(mismatch(e.span, "a generator name", format!("`{}`", show(other)))),
            };
            let mut vals: Vec<Option<Q>> = vec![None; carrier.len()];
            for (k, (x, v)) in pairs(e, Sym::Arrow, "value pair `x => q`")?.into_iter().enumerate() {
                let at = e.value[k].span;
                let xi = carrier.index_of(&x).ok_or_else(|| ParseError::UnresolvedReference {
                    at,
                    kind: "element".into(),
                    name: x.clone(),
                })?;
                vals[xi] = Some(parse_rational(&v, at)?);
            }
            let vals = vals
                .into_iter()
                .enumerate()
                .map(|(x, v)| v.ok_or_else(|| invalid(e.span, format!("no value for `{}`", carrier.label(x)))))
                .collect::<Result<Vec<_>, _>>()?;
            gens.push(RFun::new(carrier.clone(), vals).map_err(|err| invalid(e.span, err))?);
            names.push(name);
        }
        let space = BSpace::new(carrier, gens).map_err(|e| invalid(b.span, e))?;
        self.model.spaces.push((
            b.name.clone(),
            SpaceDecl {
                space,
                gen_names: names,
            },
        ));
        Ok(())
    }

    fn space_ref(&self, name: &str, at: Span) -> Result<&SpaceDecl, ParseError> {
        self.reference(name, BlockKind::Subbase, at)?;
        Ok(lookup(&self.model.spaces, name).expect("resolved"))
    }

    fn spectrum(&mut self, b: &Block) -> Result<(), ParseError> {
        if let Some(e) = optional(b, "constant") {
            let (index, _) = self.ref_entry(b, "index", BlockKind::Directed)?;
            let d = lookup(&self.model.directed, &index).expect("resolved");
            let dir = parse_direction(required(b, "direction")?)?;
            let item = one_item(e)?;
            let name = single_word(item, "subbase name")?;
            let sp = self.space_ref(&name, item.span)?;
            let spectrum = Spectrum::constant(d, dir, &sp.space);
            self.model
                .spectra
                .push((b.name.clone(), SpectrumDecl { index, spectrum }));
            return Ok(());
        }
        let (fam_name, _) = self.ref_entry(b, "family", BlockKind::Family)?;
        let (index, fam) = lookup(&self.model.families, &fam_name).expect("resolved").clone();
        let se = required(b, "spaces")?;
        let names = words(se, "subbase name")?;
        if names.len() != fam.len() {
            return Err(mismatch(se.span, &format!("{} spaces", fam.len()), names.len()));
        }
        let mut decls = Vec::new();
        for (k, n) in names.iter().enumerate() {
            let sp = self.space_ref(n, se.value[k].span)?;
            if sp.space.carrier() != fam.carrier(k) {
                return Err(mismatch(
                    se.value[k].span,
                    &format!("a subbase on the carrier at `{}`", fam.index().base().label(k)),
                    format!("subbase `{n}`"),
                ));
            }
            decls.push(sp.clone());
        }
        let spaces: Vec<BSpace> = decls.iter().map(|d| d.space.clone()).collect();
        let mut given = Vec::new();
        for e in b.entries.iter().filter(|e| e.key == "witness") {
            let (i, j) = self.order_args(fam.index(), e)?;
            let (src, dst) = match fam.direction() {
                Direction::Covariant => (i, j),
                Direction::Contravariant => (j, i),
            };
            let is_auto = matches!(e.value.as_slice(), [Item { atoms, .. }] if matches!(atoms.as_slice(), [Atom::Word(w, _)] if w == "auto"));
            let w = if is_auto {
                auto_witness(&fam, &spaces, i, j, self.depth).map_err(|err| invalid(e.span, err))?
            } else {
                let certs = e
                    .value
                    .iter()
                    .map(|item| match item.atoms.as_slice() {
                        [a] => parse_certificate(a, &decls[src].gen_names),
                        other => Err(mismatch(item.span, "one certificate", format!("`{}`", show(other)))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let want = spaces[dst].generators().len();
                if certs.len() != want {
                    return Err(mismatch(e.span, &format!("{want} certificates"), certs.len()));
                }
                MorphismWitness::new(fam.transport(i, j).clone(), certs, &spaces[dst])
            };
            given.push(((i, j), w));
        }
        let spectrum = Spectrum::new(fam, spaces, given).map_err(|e| invalid(b.span, e))?;
        self.model
            .spectra
            .push((b.name.clone(), SpectrumDecl { index, spectrum }));
        Ok(())
    }

    fn cofinal(&mut self, b: &Block) -> Result<(), ParseError> {
        let (index, _) = self.ref_entry(b, "index", BlockKind::Directed)?;
        let d = lookup(&self.model.directed, &index).expect("resolved").clone();
        let se = required(b, "subset")?;
        let members = words(se, "index element")?;
        let mut embed = Vec::new();
        for (k, m) in members.iter().enumerate() {
            embed.push(self.index_of(&d, m, se.value[k].span)?);
        }
        let sub = Setoid::discrete(&members).map_err(|e| invalid(se.span, e))?;
        let ce = required(b, "cof")?;
        let mut cof: Vec<Option<usize>> = vec![None; d.len()];
        for (k, (i, j)) in pairs(ce, Sym::Arrow, "pair `i => j`")?.into_iter().enumerate() {
            let at = ce.value[k].span;
            let i = self.index_of(&d, &i, at)?;
            let j = sub.index_of(&j).ok_or_else(|| ParseError::UnresolvedReference {
                at,
                kind: "subset element".into(),
                name: j.clone(),
            })?;
            cof[i] = Some(j);
        }
        let cof = cof
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| invalid(ce.span, format!("no image for `{}`", d.base().label(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        let embed = SetoidFn::new(sub.clone(), d.base().clone(), embed).map_err(|e| invalid(se.span, e))?;
        let cof = SetoidFn::new(d.base().clone(), sub, cof).map_err(|e| invalid(ce.span, e))?;
        let subset = CofinalSubset::new(embed, cof).map_err(|e| invalid(b.span, e))?;
        self.model
            .cofinals
            .push((b.name.clone(), CofinalDecl { index, subset }));
        Ok(())
    }

    /// Legs of a cocone (`outward`) or cone, with synthesized certificates.
    fn legs(&self, b: &Block, s: &Spectrum, apex: &BSpace, outward: bool) -> Result<Vec<MorphismWitness>, ParseError> {
        let d = s.index();
        let mut legs: Vec<Option<MorphismWitness>> = vec![None; s.len()];
        for e in b.entries.iter().filter(|e| e.key == "leg") {
            let i = self.index_arg(d, e)?;
            let (src, dst) = if outward {
                (s.space(i), apex)
            } else {
                (apex, s.space(i))
            };
            let ps = pairs(e, Sym::Arrow, "map pair `x => y`")?;
            let f = SetoidFn::from_labels(src.carrier().clone(), dst.carrier().clone(), &ps)
                .map_err(|err| invalid(e.span, err))?;
            let w = synthesize_witness(src, dst, f, self.depth).map_err(|err| invalid(e.span, err))?;
            legs[i] = Some(w);
        }
        legs.into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| invalid(b.span, format!("no leg at `{}`", d.base().label(i)))))
            .collect()
    }

    fn apex(&self, b: &Block) -> Result<BSpace, ParseError> {
        let e = required(b, "apex")?;
        let item = one_item(e)?;
        let name = single_word(item, "subbase name")?;
        Ok(self.space_ref(&name, item.span)?.space.clone())
    }

    fn cocone(&mut self, b: &Block) -> Result<(), ParseError> {
        let (spectrum, _) = self.ref_entry(b, "spectrum", BlockKind::Spectrum)?;
        let s = lookup(&self.model.spectra, &spectrum)
            .expect("resolved")
            .spectrum
            .clone();
        let apex = self.apex(b)?;
        let legs = self.legs(b, &s, &apex, true)?;
        self.model.cocones.push((
            b.name.clone(),
            CoconeDecl {
                spectrum,
                cocone: Cocone { apex, legs },
            },
        ));
        Ok(())
    }

    fn cone(&mut self, b: &Block) -> Result<(), ParseError> {
        let (spectrum, _) = self.ref_entry(b, "spectrum", BlockKind::Spectrum)?;
        let s = lookup(&self.model.spectra, &spectrum)
            .expect("resolved")
            .spectrum
            .clone();
        let apex = self.apex(b)?;
        let legs = self.legs(b, &s, &apex, false)?;
        self.model.cones.push((
            b.name.clone(),
            ConeDecl {
                spectrum,
                cone: Cone { apex, legs },
            },
        ));
        Ok(())
    }

    fn pool(&mut self, b: &Block) -> Result<(), ParseError> {
        let (spectrum, _) = self.ref_entry(b, "spectrum", BlockKind::Spectrum)?;
        let (fixed, _) = self.ref_entry(b, "fixed", BlockKind::Subbase)?;
        self.model.pools.push((b.name.clone(), PoolDecl { spectrum, fixed }));
        Ok(())
    }

    fn suite(&mut self, b: &Block) -> Result<(), ParseError> {
        let mut run = Vec::new();
        if let Some(e) = optional(b, "run") {
            for item in &e.value {
                let w = single_word(item, "check group")?;
                let g = Group::ALL.into_iter().find(|g| g.keyword() == w).ok_or_else(|| {
                    let all: Vec<&str> = Group::ALL.iter().map(|g| g.keyword()).collect();
                    mismatch(item.span, &format!("one of {}", all.join(", ")), format!("`{w}`"))
                })?;
                if !run.contains(&g) {
                    run.push(g);
                }
            }
        }
        let random = match optional(b, "random") {
            Some(e) => {
                let item = one_item(e)?;
                parse_count(&single_word(item, "instance count")?, item.span)?
            }
            None => 0,
        };
        let mut products = Vec::new();
        for e in b.entries.iter().filter(|e| e.key == "product") {
            match e.value.as_slice() {
                [l, r] => {
                    let (l, r) = (single_word(l, "spectrum name")?, single_word(r, "spectrum name")?);
                    self.reference(&l, BlockKind::Spectrum, e.value[0].span)?;
                    self.reference(&r, BlockKind::Spectrum, e.value[1].span)?;
                    products.push((l, r));
                }
                _ => return Err(mismatch(e.span, "two spectrum names", e.value.len())),
            }
        }
        self.model
            .suites
            .push((b.name.clone(), SuiteDecl { run, random, products }));
        Ok(())
    }
}

fn optional<'b>(b: &'b Block, key: &str) -> Option<&'b Entry> {
    b.entries.iter().find(|e| e.key == key && e.args.is_empty())
}

fn required<'b>(b: &'b Block, key: &str) -> Result<&'b Entry, ParseError> {
    optional(b, key).ok_or_else(|| ParseError::Invalid {
        at: b.span,
        message: format!("{} `{}` needs a `{key}` entry", b.kind, b.name),
    })
}

fn one_item(e: &Entry) -> Result<&Item, ParseError> {
    match e.value.as_slice() {
        [item] => Ok(item),
        _ => Err(mismatch(e.span, "a single value", format!("{} values", e.value.len()))),
    }
}

const KEYS: [(BlockKind, &[&str]); 10] = [
    (BlockKind::Setoid, &["elements", "equal"]),
    (BlockKind::Directed, &["elements", "equal", "order", "closure"]),
    (BlockKind::Family, &["index", "direction", "carrier", "equal", "map"]),
    (BlockKind::Subbase, &["carrier", "gen"]),
    (
        BlockKind::Spectrum,
        &["family", "spaces", "witness", "index", "direction", "constant"],
    ),
    (BlockKind::Cofinal, &["index", "subset", "cof"]),
    (BlockKind::Cocone, &["spectrum", "apex", "leg"]),
    (BlockKind::Cone, &["spectrum", "apex", "leg"]),
    (BlockKind::Pool, &["spectrum", "fixed"]),
    (BlockKind::Suite, &["run", "random", "product"]),
];

/// Resolves every reference and builds the declared objects. `depth` bounds
/// synthesized certificates for `auto` witnesses and cone legs.
pub fn resolve(doc: &Document, depth: usize) -> Result<Model, ParseError> {
    let mut kinds = HashMap::new();
    for b in &doc.blocks {
        if let Some((_, first)) = kinds.insert(b.name.as_str(), (b.kind, b.span)) {
            return Err(invalid(b.span, format!("`{}` is already declared at {first}", b.name)));
        }
        let allowed = KEYS.iter().find(|(k, _)| *k == b.kind).expect("every kind listed").1;
        if let Some(e) = b.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            let expected: Vec<String> = allowed.iter().map(|k| format!("`{k}`")).collect();
            return Err(ParseError::Syntax {
                at: e.span,
                expected,
                found: format!("`{}`", e.key),
            });
        }
    }
    let mut r = Resolver {
        kinds,
        model: Model::default(),
        depth,
    };
    for kind in BlockKind::ALL {
        for b in doc.blocks.iter().filter(|b| b.kind == kind) {
            match kind {
                BlockKind::Setoid => r.setoid(b)?,
                BlockKind::Directed => r.directed(b)?,
                BlockKind::Family => r.family(b)?,
                BlockKind::Subbase => r.subbase(b)?,
                BlockKind::Spectrum => r.spectrum(b)?,
                BlockKind::Cofinal => r.cofinal(b)?,
                BlockKind::Cocone => r.cocone(b)?,
                BlockKind::Cone => r.cone(b)?,
                BlockKind::Pool => r.pool(b)?,
                BlockKind::Suite => r.suite(b)?,
            }
        }
    }
    Ok(r.model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn resolve_text(t: &str) -> Result<Model, ParseError> {
        resolve(&parse(t).unwrap(), 8)
    }

    #[test]
    fn dangling_reference_is_located() {
        let err = resolve_text("spectrum S {\n  family: Missing\n}\n").unwrap_err();
        match err {
            ParseError::UnresolvedReference { at, kind, name } => {
                assert_eq!((at.line, at.col), (2, 11));
                assert_eq!(kind, "family");
                assert_eq!(name, "Missing");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_kind_is_a_type_mismatch() {
        let err = resolve_text("setoid X { elements: p }\nspectrum S { family: X }\n").unwrap_err();
        assert!(matches!(err, ParseError::TypeMismatch { .. }), "{err:?}");
    }

    #[test]
    fn certificates_parse() {
        let names = vec!["f0".to_string()];
        let doc = parse("x X { c: (bic (add (const 1) (neg id)) (gen f0)) }").err();
        assert!(doc.is_some());
        let doc = parse("suite X { c: (bic (add (const 1) (neg id)) (gen f0)) }").unwrap();
        let a = &doc.blocks[0].entries[0].value[0].atoms[0];
        let c = parse_certificate(a, &names).unwrap();
        assert_eq!(c, bspec_core::fixtures::one_minus_gen());
        let bad = parse("suite X { c: (gen g9) }").unwrap();
        let a = &bad.blocks[0].entries[0].value[0].atoms[0];
        assert!(matches!(
            parse_certificate(a, &names),
            Err(ParseError::UnresolvedReference { .. })
        ));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = resolve_text("setoid X { elements: p\n  colour: red }\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { at, .. } if at.line == 2));
    }
}
