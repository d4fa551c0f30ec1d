//! Subcommand implementations. Each returns a [`ResultDocument`].

use std::sync::Arc;

use polymeasure::chambers::{chamber_densities, chamber_mass, hull_area, incidence_at, Arrangement};
use polymeasure::cone::{flips as flip_pairs, is_extreme_ray, ConeOracle};
use polymeasure::equipot::{
    certify, extract_polygon_pair, hexagram_example, hexagram_readings, unit_density_decide_1d, unit_density_search,
    verify_equipotential, UnitDensityCertificate,
};
use polymeasure::measure::TriangleSum;
use polymeasure::moments::{measure_moments, triangle_moments, MomentSequence};
use polymeasure::nullspace::{null_measures_complex, null_measures_real, real_density_basis};
use polymeasure::{CNum, PointSet, PolygonalMeasure, Scalar, TriangleRef};
use serde_json::{json, Value};

use crate::docs::{exact, point, to_text, ConfigDocument, MeasureDocument, ResultDocument};
use crate::error::{CliError, CliResult};
use crate::svg::render_chambers;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn complex(z: &CNum) -> Value {
    json!({ "re": exact(&z.re), "im": exact(&z.im) })
}

fn moment_table(m: &MomentSequence) -> Value {
    json!({
        "values": m.values.iter().map(complex).collect::<Vec<_>>(),
        "all_zero": m.all_zero(),
        "first_nonzero": m.first_nonzero(),
    })
}

fn sign_string(v: &[i8]) -> String {
    v.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

fn config_input(config: &ConfigDocument) -> CliResult<(Arc<PointSet>, String)> {
    let s = Arc::new(config.to_point_set()?);
    Ok((s.clone(), to_text(&ConfigDocument::from_point_set(&s))))
}

fn measure_input(measure: &MeasureDocument) -> CliResult<(PolygonalMeasure<Scalar>, String)> {
    let mu = measure.to_real()?;
    Ok((mu.clone(), to_text(&MeasureDocument::from_real(&mu))))
}

fn polygon_json(arr: &Arrangement, idx: usize) -> Vec<[String; 2]> {
    arr.chambers[idx].polygon().iter().map(point).collect()
}

/// Kernel basis, dimension and moment audit of the real or complex null space.
pub fn nullspace(config: &ConfigDocument, complex_field: bool) -> CliResult<ResultDocument> {
    let (s, input) = config_input(config)?;
    let n = s.n();
    let order = 2 * n + 5;
    let (kind, expected, columns, kernel, dim, nondegenerate, dropped, measures, vanishing) = if complex_field {
        let ns = null_measures_complex(&s);
        let kernel: Vec<Vec<Value>> = ns.kernel.vectors.iter().map(|v| v.iter().map(complex).collect()).collect();
        let vanishing: Vec<bool> = ns.measures.iter().map(|m| measure_moments(m, order).all_zero()).collect();
        let docs: Vec<MeasureDocument> = ns.measures.iter().map(MeasureDocument::from_complex).collect();
        let cols = polymeasure::nullspace::column_pairs(n);
        (
            "complex",
            binomial(n - 1, 2),
            cols,
            json!(kernel),
            ns.dimension(),
            ns.nondegenerate,
            ns.dropped_columns,
            docs,
            vanishing,
        )
    } else {
        let ns = null_measures_real(&s);
        let kernel: Vec<Vec<String>> = ns.kernel.vectors.iter().map(|v| v.iter().map(exact).collect()).collect();
        let vanishing: Vec<bool> = ns.measures.iter().map(|m| measure_moments(m, order).all_zero()).collect();
        let docs: Vec<MeasureDocument> = ns.measures.iter().map(MeasureDocument::from_real).collect();
        let cols = polymeasure::nullspace::column_pairs(n);
        (
            "real",
            binomial(n.saturating_sub(2), 2),
            cols,
            json!(kernel),
            ns.dimension(),
            ns.nondegenerate,
            ns.dropped_columns,
            docs,
            vanishing,
        )
    };
    let dimension_ok = !nondegenerate || dim == expected;
    let passed = dimension_ok && vanishing.iter().all(|&v| v);
    let payload = json!({
        "kind": kind,
        "n": n,
        "dimension": dim,
        "expected_dimension": expected,
        "nondegenerate": nondegenerate,
        "dropped_columns": dropped,
        "columns": columns,
        "kernel": kernel,
        "measures": measures,
        "audit": { "order": order, "vanishing": vanishing },
    });
    let field = if complex_field { "complex" } else { "real" };
    Ok(ResultDocument::new("nullspace", vec![("field", field.to_owned())], &[input], passed, payload))
}

/// Where `chambers` takes its measure from.
pub enum MeasureSource<'a> {
    None,
    Document(&'a MeasureDocument),
    Kernel(usize),
}

pub struct ChamberRun {
    pub document: ResultDocument,
    pub svg: Option<String>,
}

/// Chamber report with optional densities, segment cells and SVG.
pub fn chambers(config: &ConfigDocument, source: MeasureSource, segments: bool, svg: bool) -> CliResult<ChamberRun> {
    let (s, config_text) = config_input(config)?;
    let mut inputs = vec![config_text];
    let mut args = Vec::new();
    let mu = match source {
        MeasureSource::None => None,
        MeasureSource::Document(doc) => {
            let (mu, text) = measure_input(doc)?;
            if mu.base().as_ref() != s.as_ref() {
                return Err(CliError::Input("measure and configuration use different points".into()));
            }
            args.push(("measure", "document".to_owned()));
            inputs.push(text);
            Some(mu)
        }
        MeasureSource::Kernel(k) => {
            let ns = null_measures_real(&s);
            let mu = ns.measures.get(k).cloned().ok_or_else(|| {
                CliError::Input(format!("kernel index {k} out of range (dimension {})", ns.dimension()))
            })?;
            args.push(("kernel", k.to_string()));
            Some(mu)
        }
    };
    if segments {
        args.push(("segments", "true".to_owned()));
    }
    let arr = Arrangement::new(&s)?;
    let reps = arr.representatives();
    let dens = mu.as_ref().map(|m| chamber_densities(m, &reps));
    let chambers: Vec<Value> = arr
        .chambers
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = json!({
                "index": i,
                "sign_vector": sign_string(&c.sign_vector),
                "area": exact(&c.area),
                "representative": point(&c.representative),
                "polygon": polygon_json(&arr, i),
            });
            if let Some(d) = &dens {
                v["density"] = json!(exact(&d[i]));
            }
            v["approx"] = json!({ "area": c.area.to_f64() });
            v
        })
        .collect();
    let mut summary = json!({
        "chambers": arr.chambers.len(),
        "lines": arr.lines.len(),
        "hull_area": exact(&hull_area(&s)?),
    });
    if let Some(d) = &dens {
        let mut sorted = d.clone();
        sorted.sort();
        summary["density_multiset"] = json!(sorted.iter().map(exact).collect::<Vec<_>>());
        summary["mass"] = json!(exact(&chamber_mass(d, &arr.chambers)));
    }
    let mut payload = json!({
        "shear": arr.shear.to_string(),
        "lines": arr.lines.iter().map(|l| json!({
            "a": exact(&l.a), "b": exact(&l.b), "c": exact(&l.c),
            "generators": l.generators,
            "points": l.points,
        })).collect::<Vec<_>>(),
        "chambers": chambers,
    });
    if let Some(m) = &mu {
        payload["measure"] = json!(MeasureDocument::from_real(m));
    }
    if segments {
        let cells = arr.segment_cells();
        let cell_reps: Vec<CNum> = cells.iter().map(|c| c.representative.clone()).collect();
        let cell_dens = mu.as_ref().map(|m| chamber_densities(m, &cell_reps));
        payload["segment_cells"] = cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut v = json!({ "chambers": c.chambers, "area": exact(&c.area), "representative": point(&c.representative) });
                if let Some(d) = &cell_dens {
                    v["density"] = json!(exact(&d[i]));
                }
                v
            })
            .collect();
        summary["segment_cells"] = json!(cells.len());
    }
    payload["summary"] = summary;
    let svg = svg.then(|| render_chambers(&s, &arr, dens.as_deref()));
    Ok(ChamberRun { document: ResultDocument::new("chambers", args, &inputs, true, payload), svg })
}

/// Triangle-by-cell incidence matrix over line chambers or segment cells.
pub fn incidence(config: &ConfigDocument, segments: bool) -> CliResult<ResultDocument> {
    let (s, input) = config_input(config)?;
    let arr = Arrangement::new(&s)?;
    let reps: Vec<CNum> = if segments {
        arr.segment_cells().into_iter().map(|c| c.representative).collect()
    } else {
        arr.representatives()
    };
    let inc = incidence_at(&s, &reps);
    let payload = json!({
        "cells": if segments { "segments" } else { "lines" },
        "rows": inc.rows.iter().map(TriangleRef::indices).collect::<Vec<_>>(),
        "columns": inc.cols(),
        "matrix": inc.entries.iter().map(|r| r.iter().map(|b| char::from(b'0' + b)).collect::<String>()).collect::<Vec<_>>(),
    });
    let args = vec![("cells", if segments { "segments" } else { "lines" }.to_owned())];
    Ok(ResultDocument::new("incidence", args, &[input], true, payload))
}

/// Moments of a measure, or of every basis triangle when none is given.
pub fn moments(config: &ConfigDocument, measure: Option<&MeasureDocument>, order: usize) -> CliResult<ResultDocument> {
    let (s, config_text) = config_input(config)?;
    let mut inputs = vec![config_text];
    let payload = match measure {
        Some(doc) => {
            let mu = doc.to_complex()?;
            if mu.base().as_ref() != s.as_ref() {
                return Err(CliError::Input("measure and configuration use different points".into()));
            }
            inputs.push(to_text(&doc.normalized()?));
            json!({ "order": order, "measure": moment_table(&measure_moments(&mu, order)) })
        }
        None => {
            let rows = s
                .basis_triangles()
                .into_iter()
                .map(|t| {
                    let values = triangle_moments(&s, t, order)?;
                    Ok(json!({ "triangle": t.indices(), "moments": moment_table(&MomentSequence { values }) }))
                })
                .collect::<CliResult<Vec<_>>>()?;
            json!({ "order": order, "triangles": rows })
        }
    };
    let args = vec![("order", order.to_string())];
    Ok(ResultDocument::new("moments", args, &inputs, true, payload))
}

fn certificate_json(cert: &UnitDensityCertificate, arr: &Arrangement) -> CliResult<Value> {
    let area = |ids: &[usize]| exact(&ids.iter().map(|&i| &arr.chambers[i].area).sum::<Scalar>());
    let pair = extract_polygon_pair(cert)?;
    Ok(json!({
        "measure": MeasureDocument::from_real(&cert.measure),
        "plus_chambers": cert.plus_chambers,
        "minus_chambers": cert.minus_chambers,
        "zero_chambers": cert.zero_chambers,
        "plus_area": area(&cert.plus_chambers),
        "minus_area": area(&cert.minus_chambers),
        "moment_check_order": cert.moment_check_order,
        "pair": {
            "first": pair.first,
            "second": pair.second,
            "difference": pair.difference.as_ref().map(MeasureDocument::from_real),
            "verified": pair.verified,
        },
        "chamber_polygons": (0..arr.chambers.len()).map(|i| polygon_json(arr, i)).collect::<Vec<_>>(),
    }))
}

/// Bounded search for unit-density null measures.
pub fn search_unit(config: &ConfigDocument, bound: u32) -> CliResult<ResultDocument> {
    let (s, input) = config_input(config)?;
    let (free, basis) = real_density_basis(&s)?;
    let found = unit_density_search(&s, bound)?;
    let arr = Arrangement::new(&s)?;
    let certificates = found.iter().map(|c| certificate_json(c, &arr)).collect::<CliResult<Vec<_>>>()?;
    let mut payload = json!({
        "bound": bound,
        "null_dimension": basis.len(),
        "free_columns": free,
        "exhaustive": basis.len() <= 1,
        "certificates": certificates,
    });
    if s.len() == 5 {
        payload["decide_1d"] = match unit_density_decide_1d(&s)? {
            Some(c) => certificate_json(&c, &arr)?,
            None => Value::Null,
        };
    }
    Ok(ResultDocument::new("search-unit", vec![("bound", bound.to_string())], &[input], true, payload))
}

fn report_json(mu: &PolygonalMeasure<Scalar>, order: usize) -> CliResult<(bool, Value)> {
    let report = verify_equipotential(mu, order)?;
    let value = json!({
        "order": order,
        "checks": report.results.iter().map(|(c, ok)| json!({ "check": c.name(), "passed": ok })).collect::<Vec<_>>(),
        "first_failure": report.first_failure.map(|c| c.name()),
        "first_nonzero_moment": measure_moments(mu, order).first_nonzero(),
    });
    Ok((report.passed(), value))
}

/// Equipotentiality checks on a real measure.
pub fn verify(measure: &MeasureDocument, order: usize) -> CliResult<ResultDocument> {
    let (mu, input) = measure_input(measure)?;
    let (passed, report) = report_json(&mu, order)?;
    Ok(ResultDocument::new("verify", vec![("order", order.to_string())], &[input], passed, report))
}

pub struct HexagramRun {
    pub document: ResultDocument,
    pub config: ConfigDocument,
    pub certificate: Value,
}

/// The six-point example over ℚ(√3) with its certificate and readings.
pub fn hexagram(order: usize) -> CliResult<HexagramRun> {
    let (s, mu) = hexagram_example();
    let arr = Arrangement::new(&s)?;
    let cert = certify(&mu, &arr, order).ok_or_else(|| CliError::Input("hexagram measure does not certify".into()))?;
    let certificate = certificate_json(&cert, &arr)?;
    let (report_ok, report) = report_json(&mu, order)?;
    let readings = hexagram_readings(order)?;
    let accepted: Vec<&str> = readings.iter().filter(|r| r.passes()).map(|r| r.label).collect();
    let readings_json: Vec<Value> = readings
        .iter()
        .map(|r| {
            json!({
                "reading": r.label,
                "mass": exact(&r.mass),
                "first_nonzero_moment": r.first_nonzero_moment,
                "passes": r.passes(),
            })
        })
        .collect();
    let config = ConfigDocument::from_point_set(&s);
    let passed = report_ok && !accepted.is_empty();
    let payload = json!({
        "config": config,
        "measure": MeasureDocument::from_real(&mu),
        "certificate": certificate,
        "report": report,
        "readings": readings_json,
        "accepted_readings": accepted,
    });
    let document = ResultDocument::new("hexagram", vec![("order", order.to_string())], &[], passed, payload);
    Ok(HexagramRun { document, config, certificate })
}

/// Extreme-ray verdict for every triangle, optionally checked by the cone oracle.
pub fn extreme_rays(config: &ConfigDocument, oracle: bool) -> CliResult<ResultDocument> {
    let (s, input) = config_input(config)?;
    let all = s.all_triangles();
    let cone = if oracle { Some(ConeOracle::new(s.clone())?) } else { None };
    let mut agree = true;
    let mut rows = Vec::with_capacity(all.len());
    for t in &all {
        let extreme = is_extreme_ray(&s, *t)?;
        let mut row = json!({ "triangle": t.indices(), "extreme": extreme });
        if let Some(cone) = &cone {
            let others: Vec<TriangleRef> = all.iter().copied().filter(|g| g != t).collect();
            let target = TriangleSum::from_terms(s.clone(), [(*t, Scalar::one())])?;
            let found = cone.membership(&target, &others)?;
            agree &= found.is_none() == extreme;
            row["oracle"] = match found {
                None => json!({ "decomposable": false }),
                Some(c) => json!({
                    "decomposable": true,
                    "generators": others.iter().zip(&c).filter(|(_, x)| !x.is_zero())
                        .map(|(g, x)| json!({ "triangle": g.indices(), "coefficient": exact(x) }))
                        .collect::<Vec<_>>(),
                }),
            };
        }
        rows.push(row);
    }
    let extreme_count = rows.iter().filter(|r| r["extreme"] == json!(true)).count();
    let mut payload = json!({ "triangles": rows, "extreme": extreme_count, "total": all.len() });
    if oracle {
        payload["oracle_agrees"] = json!(agree);
    }
    let args = vec![("oracle", oracle.to_string())];
    Ok(ResultDocument::new("extreme-rays", args, &[input], agree, payload))
}

/// Flip pairs and their chamber-density identity.
pub fn flips(config: &ConfigDocument) -> CliResult<ResultDocument> {
    let (s, input) = config_input(config)?;
    let oracle = ConeOracle::new(s.clone())?;
    let mut all_hold = true;
    let rows = flip_pairs(&s)?
        .iter()
        .map(|f| {
            let holds = oracle.densities(&f.difference(&s)?).iter().all(Scalar::is_zero);
            all_hold &= holds;
            Ok(json!({
                "pair": f.pair.map(|t| t.indices()),
                "flipped": f.flipped.map(|t| t.indices()),
                "identity_holds": holds,
            }))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ResultDocument::new("flips", vec![], &[input], all_hold, json!({ "flips": rows })))
}
