//! Text reports for each command. Every report is deterministic: the same
//! project and flags give identical bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use ppsort_core::artheory::{
    ar_sequences, build_catalogue, export_ar_quiver, irreducible_map_counts, node_names,
};
use ppsort_core::cache::{self, provenance_tag};
use ppsort_core::funcat::{auslander_algebra, functor_catalogue, loewy_label};
use ppsort_core::localization::{
    gabriel_quiver, quotient_category, restrict_functor, serre_subcategory, DefinableSubcatSpec,
};
use ppsort_core::ppform::{evaluate, evaluate_pair, parse_formula, parse_pair_text};
use ppsort_core::project::{Project, TensorChoice};
use ppsort_core::rep::{decompose, injective, is_isomorphic_seeded, projective, socle, top};
use ppsort_core::tensorcat::{functor_summands, tensor_table};
use ppsort_core::{
    AuslanderAlgebra, Bounds, Catalogue, Error, FieldSpec, Matrix, Representation, Result,
};

pub struct Context {
    project: Project,
    stem: String,
    seed: u64,
    cache_dir: Option<PathBuf>,
}

fn vector_text(m: &Matrix, c: usize) -> String {
    let parts: Vec<String> = (0..m.rows()).map(|r| m[(r, c)].to_string()).collect();
    format!("[{}]", parts.join(", "))
}

impl Context {
    pub fn open(
        path: &Path,
        field: Option<FieldSpec>,
        max_dim: Option<usize>,
        max_entries: Option<usize>,
        seed: u64,
        cache_dir: Option<PathBuf>,
    ) -> Result<Self> {
        let mut project = Project::load(path, field)?;
        if let Some(d) = max_dim {
            project.bounds.max_total_dim = d;
        }
        if let Some(e) = max_entries {
            project.bounds.max_entries = e;
        }
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "project".into());
        Ok(Context {
            project,
            stem,
            seed,
            cache_dir,
        })
    }

    fn bounds(&self) -> &Bounds {
        &self.project.bounds
    }

    fn cache_file(&self) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("{}.json", self.stem)))
    }

    /// A cache for this project, if the cache directory has one.
    fn cached(&self) -> Result<Option<cache::Loaded>> {
        let Some(path) = self.cache_file().filter(|p| p.exists()) else {
            return Ok(None);
        };
        let loaded = cache::load_path(&path)?;
        if !loaded.catalogue.algebra().same_as(&self.project.algebra) {
            return Err(Error::Cache(format!(
                "{} was built for a different algebra",
                path.display()
            )));
        }
        Ok(Some(loaded))
    }

    fn catalogue(&self) -> Result<Catalogue> {
        match self.cached()? {
            Some(l) => Ok(l.catalogue),
            None => build_catalogue(&self.project.algebra, self.bounds()),
        }
    }

    fn functor_data(&self) -> Result<(AuslanderAlgebra, Catalogue)> {
        if let Some(l) = self.cached()? {
            if let Some(f) = l.functors {
                return Ok(f);
            }
            let aus = auslander_algebra(&l.catalogue)?;
            let fc = functor_catalogue(&aus, self.bounds())?;
            return Ok((aus, fc));
        }
        let cat = build_catalogue(&self.project.algebra, self.bounds())?;
        let aus = auslander_algebra(&cat)?;
        let fc = functor_catalogue(&aus, self.bounds())?;
        Ok((aus, fc))
    }

    /// Names of the simple functors, one per base catalogue entry.
    fn simple_names(&self, cat: &Catalogue) -> Vec<String> {
        node_names(cat)
            .into_iter()
            .map(|n| {
                self.project
                    .file
                    .simple_names
                    .get(&n)
                    .cloned()
                    .unwrap_or_else(|| format!("S{n}"))
            })
            .collect()
    }

    pub fn decompose(&self, name: &str) -> Result<String> {
        let x = self.project.representation(name)?;
        let d = decompose(x)?;
        let mut out = String::new();
        writeln!(out, "input {} {}", name, x.dim_label()).unwrap();
        let mut names = Vec::new();
        for (m, mult) in &d.factors {
            let n = module_name(m)?;
            writeln!(out, "{}\t{}\tx{}", m.dim_label(), n, mult).unwrap();
            names.extend(std::iter::repeat_n(n, *mult));
        }
        let certified = d.verify() && is_isomorphic_seeded(x, &d.sum, self.seed)?.is_some();
        writeln!(
            out,
            "certificate {}",
            if certified { "ok" } else { "FAILED" }
        )
        .unwrap();
        names.sort();
        writeln!(
            out,
            "{}",
            if names.is_empty() {
                "0".to_string()
            } else {
                names.join(" + ")
            }
        )
        .unwrap();
        Ok(out)
    }

    pub fn ar_quiver(&self, auslander: bool) -> Result<String> {
        let cat = if auslander {
            self.functor_data()?.1
        } else {
            self.catalogue()?
        };
        let dot = export_ar_quiver(&cat)?;
        let arrows: usize = irreducible_map_counts(&cat)?.iter().flatten().sum();
        let seqs = ar_sequences(&cat)?.len();
        let mut out = dot;
        if !out.ends_with('\n') {
            out.push('\n');
        }
        writeln!(
            out,
            "{}",
            ppsort_core::artheory::summary_line(cat.len(), arrows, seqs)
        )
        .unwrap();
        Ok(out)
    }

    pub fn pp_eval(&self, formula: &str, rep: &str) -> Result<String> {
        let alg = &self.project.algebra;
        let text = self.project.formula_text(formula);
        let m = self.project.representation(rep)?;
        let mut out = String::new();
        if text.contains(" / ") || (text.contains('/') && parse_pair_text(alg, text).is_ok()) {
            let pair = parse_pair_text(alg, text)?;
            let v = evaluate_pair(&pair, m)?;
            writeln!(out, "dim {}", v.dim).unwrap();
            writeln!(out, "numerator dim {}", v.phi.dim()).unwrap();
            writeln!(out, "denominator dim {}", v.psi.dim()).unwrap();
            for c in 0..v.representatives.cols() {
                writeln!(out, "  {}", vector_text(&v.representatives, c)).unwrap();
            }
        } else {
            let phi = parse_formula(alg, text)?;
            let s = evaluate(&phi, m)?;
            writeln!(out, "dim {}", s.dim()).unwrap();
            for c in 0..s.basis.cols() {
                writeln!(out, "  {}", vector_text(&s.basis, c)).unwrap();
            }
        }
        Ok(out)
    }

    pub fn functors(&self) -> Result<String> {
        let (aus, fc) = self.functor_data()?;
        let cat = aus.catalogue();
        let names = self.simple_names(cat);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut out = String::new();
        writeln!(
            out,
            "# {} indecomposable functors on {} modules",
            fc.len(),
            cat.len()
        )
        .unwrap();
        write!(out, "#\tseries").unwrap();
        for n in node_names(cat) {
            write!(out, "\t{n}").unwrap();
        }
        writeln!(out, "\tflags").unwrap();
        for (k, e) in fc.entries().iter().enumerate() {
            write!(out, "F{}\t{}", k + 1, loewy_label(&e.module, &refs)?).unwrap();
            for d in e.module.dims() {
                write!(out, "\t{d}").unwrap();
            }
            let mut flags = Vec::new();
            if e.projective {
                flags.push("projective");
            }
            if e.injective {
                flags.push("injective");
            }
            if e.simple {
                flags.push("simple");
            }
            writeln!(
                out,
                "\t{}",
                if flags.is_empty() {
                    "-".into()
                } else {
                    flags.join(",")
                }
            )
            .unwrap();
        }
        Ok(out)
    }

    /// Resolve entry identifiers: node names or project representation names.
    fn entries(&self, cat: &Catalogue, ids: &[String]) -> Result<Vec<usize>> {
        let nodes = node_names(cat);
        ids.iter()
            .map(|id| {
                if let Some(i) = nodes.iter().position(|n| n == id) {
                    return Ok(i);
                }
                let m = self.project.representation(id)?;
                cat.find(m)
                    .map(|(i, _)| i)
                    .ok_or_else(|| Error::Unsupported(format!("`{id}` is not indecomposable")))
            })
            .collect()
    }

    pub fn localize(&self, keep: &[String], exclude: &[String]) -> Result<String> {
        let (aus, fc) = self.functor_data()?;
        let cat = aus.catalogue();
        let spec = if keep.is_empty() {
            DefinableSubcatSpec::excluding(cat, &self.entries(cat, exclude)?)?
        } else {
            DefinableSubcatSpec::new(cat, &self.entries(cat, keep)?)?
        };
        let nodes = node_names(cat);
        let names = self.simple_names(cat);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut out = String::new();
        let kept: Vec<&str> = spec.members().iter().map(|&i| nodes[i].as_str()).collect();
        writeln!(out, "subcategory {}", kept.join(" ")).unwrap();
        let serre = serre_subcategory(&fc, &spec)?;
        writeln!(out, "serre {}", serre.members.len()).unwrap();
        for (&k, f) in serre.members.iter().zip(&serre.functors) {
            writeln!(
                out,
                "  F{}\t{}\t{}",
                k + 1,
                f.dim_label(),
                loewy_label(f, &refs)?
            )
            .unwrap();
        }
        let q = quotient_category(&spec, self.bounds())?;
        writeln!(out, "quotient {} indecomposables", q.functors.len()).unwrap();
        writeln!(
            out,
            "quotient algebra dim {} on {} sorts",
            q.auslander.algebra().dim(),
            q.auslander.algebra().num_sorts()
        )
        .unwrap();
        let sub_nodes = node_names(q.auslander.catalogue());
        let edges: Vec<String> = gabriel_quiver(q.auslander.algebra())
            .iter()
            .map(|(s, t)| format!("{} -> {}", sub_nodes[*s], sub_nodes[*t]))
            .collect();
        writeln!(
            out,
            "gabriel quiver {}",
            if edges.is_empty() {
                "-".into()
            } else {
                edges.join("; ")
            }
        )
        .unwrap();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut splits = Vec::new();
        for (k, e) in fc.entries().iter().enumerate() {
            if serre.members.contains(&k) {
                continue;
            }
            let local = restrict_functor(&e.module, &aus, &q)?;
            match functor_summands(&local, &q.functors)?.as_slice() {
                [(j, 1)] => groups.entry(*j).or_default().push(k),
                parts => {
                    let ps: Vec<String> = parts
                        .iter()
                        .map(|(j, m)| format!("{m}x{}", q.functors.module(*j).dim_label()))
                        .collect();
                    splits.push(format!(
                        "split F{} {} -> {}",
                        k + 1,
                        fc.module(k).dim_label(),
                        ps.join(" + ")
                    ));
                }
            }
        }
        for ks in groups.values().filter(|ks| ks.len() > 1) {
            let labels: Vec<String> = ks
                .iter()
                .map(|&k| format!("F{} {}", k + 1, fc.module(k).dim_label()))
                .collect();
            writeln!(out, "merged {}", labels.join(" ~ ")).unwrap();
        }
        for line in splits {
            writeln!(out, "{line}").unwrap();
        }
        Ok(out)
    }

    pub fn tensor_table(&self, structure: Option<&str>) -> Result<String> {
        let choice = match structure {
            Some(s) => TensorChoice::parse(s)?,
            None => self.project.tensor()?,
        };
        let (aus, fc) = self.functor_data()?;
        let names = self.simple_names(aus.catalogue());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Ok(tensor_table(&aus, &fc, choice.structure(), &refs)?.to_tsv())
    }

    pub fn cache_save(&self, out: Option<PathBuf>, with_functors: bool) -> Result<String> {
        let path = out.or_else(|| self.cache_file()).ok_or_else(|| {
            Error::Cache("no output path: pass --out or set the cache directory".into())
        })?;
        let cat = build_catalogue(&self.project.algebra, self.bounds())?;
        let functors = if with_functors {
            let aus = auslander_algebra(&cat)?;
            Some(functor_catalogue(&aus, self.bounds())?)
        } else {
            None
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
        }
        cache::save_path(&path, &cat, functors.as_ref())
            .map_err(|e| Error::Cache(e.to_string()))?;
        Ok(format!("wrote {}\n", path.display()))
    }
}

pub fn cache_load(path: &Path) -> Result<String> {
    let l = cache::load_path(path)?;
    let mut out = String::new();
    writeln!(
        out,
        "provenance {}",
        provenance_tag(l.catalogue.provenance())
    )
    .unwrap();
    writeln!(out, "modules {}", l.catalogue.len()).unwrap();
    for n in node_names(&l.catalogue) {
        writeln!(out, "  {n}").unwrap();
    }
    writeln!(out, "ar sequences {}", l.ar.sequences.len()).unwrap();
    match &l.functors {
        Some((_, fc)) => writeln!(out, "functors {}", fc.len()).unwrap(),
        None => writeln!(out, "functors -").unwrap(),
    }
    Ok(out)
}

/// `P(v)`, `I(v)`, `S(v)` for projectives, injectives and simples, else the
/// dimension vector.
fn module_name(m: &Representation) -> Result<String> {
    let alg = m.algebra();
    let vertex = |dims: &[usize]| -> Option<usize> {
        (dims.iter().sum::<usize>() == 1).then(|| dims.iter().position(|&d| d == 1).unwrap())
    };
    if let Some(v) = vertex(top(m)?.0.dims()) {
        let p = projective(alg, v)?;
        if p.dims() == m.dims() {
            return Ok(format!("P({})", alg.sort_name(v)));
        }
    }
    if let Some(v) = vertex(m.dims()) {
        return Ok(format!("S({})", alg.sort_name(v)));
    }
    if let Some(v) = vertex(socle(m)?.0.dims()) {
        if injective(alg, v)?.dims() == m.dims() {
            return Ok(format!("I({})", alg.sort_name(v)));
        }
    }
    Ok(m.dim_label())
}
