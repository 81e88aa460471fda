//! Per-annulus theorem checks for `annulus verify`.

use annulus_core::analysis::{
    char_polys_match_up_to_zeros, check_q_positive, concavity_report, cyclotomic_part, eventual_periodicity,
    perron_dominant, Periodicity,
};
use annulus_core::heights::{extremal_flux_data, find_nontrespassed_cut, flip_class_connected, CUT_CAP};
use annulus_core::kasteleyn::{
    build_weight, flux_polynomial, triple, verify_cover_law, SquareLabeling, TreeChoice,
};
use annulus_core::laurent::{root_power, LaurentPoly};
use annulus_core::oracle::generating_function;
use annulus_core::track::{
    bi_active_submatrix, block_at_minus_one, block_at_q, connection_matrix, index_graph, trace_polynomial,
};
use annulus_core::{QuadSurface, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

fn verdict(check: &'static str, ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { check, status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn skipped(check: &'static str, detail: impl Into<String>) -> Verdict {
    Verdict { check, status: Status::Skipped, detail: detail.into() }
}

const QS: [(i64, i64); 3] = [(1, 2), (1, 1), (2, 1)];

/// `poly` is an integer multiple of `base`, after canonicalizing.
fn constant_multiple(poly: &LaurentPoly, base: &LaurentPoly) -> bool {
    poly.is_zero()
        || poly.canonical().div_exact(base).is_ok_and(|q| q.len() == 1 && q.coeff(0, 0) != 0.into())
}

/// Runs the checks on a balanced annulus. The cheap core checks always run;
/// `all` adds covers, spectra, flips and cuts.
pub fn verify(a: &QuadSurface, cap: usize, all: bool) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let phi = flux_polynomial(a)?;
    let minus = phi.at_q_minus_one()?.canonical();
    let wall_free = a.is_wall_free();

    match generating_function(a, cap) {
        Ok((signed, unsigned)) => {
            out.push(verdict("oracle", phi.canonical() == unsigned.canonical(), "det against brute force"));
            let signed = signed.at_q_one().canonical();
            let ok = minus == signed || minus.negate_variables(true, false)?.canonical() == signed;
            out.push(verdict("signed", ok, "det at q = -1 against signed count"));
        }
        Err(e) => out.push(skipped("oracle", e.to_string())),
    }

    let seg = a.cut_open(&a.find_cut()?)?;
    let c = connection_matrix(&seg)?;
    out.push(verdict("trace", trace_polynomial(&c).equals_up_to_unit(&phi), "sum of p^f tr C_f"));

    if wall_free {
        let mut bad = Vec::new();
        for (num, den) in QS {
            if !check_q_positive(&phi, num as f64 / den as f64, true)?.pass {
                bad.push(format!("{num}/{den}"));
            }
        }
        out.push(verdict("qplus", bad.is_empty(), format!("roots real negative distinct; failing q: {bad:?}")));
    } else {
        out.push(skipped("qplus", "walls present"));
    }

    if minus.is_zero() {
        out.push(verdict("minus", true, "signed count vanishes"));
    } else {
        let f = cyclotomic_part(&minus);
        out.push(verdict("minus", f.is_some(), format!("{:?}", f.map(|f| f.factors))));
    }

    let walls = a.find_walls().len();
    if walls > 0 {
        let n = walls as u32 - 1;
        let plus = LaurentPoly::from_p_coeffs(0, &[1, 1]).pow(n);
        let minus_ok = constant_multiple(&minus, &LaurentPoly::from_p_coeffs(0, &[-1, 1]).pow(n))
            || constant_multiple(&minus, &plus);
        out.push(verdict("walls", constant_multiple(&phi.at_q_one(), &plus) && minus_ok, format!("{walls} walls")));
    } else {
        out.push(skipped("walls", "wall-free"));
    }

    let mut concave = true;
    for (num, den) in QS {
        let r = concavity_report(&phi, num, den);
        concave &= r.log_concave && r.max_exponent_concave && r.min_exponent_convex;
    }
    out.push(verdict("concavity", concave, "a_f log-concave, b_f concave, c_f convex"));

    if !all {
        return Ok(out);
    }

    let mut cover_ok = true;
    for n in [2u32, 3] {
        cover_ok &= verify_cover_law(a, n as usize)?;
        let cover = seg.n_fold(n as usize)?.close_up()?;
        cover_ok &= flux_polynomial(&cover)?.equals_up_to_unit(&root_power(&phi, n)?);
    }
    out.push(verdict("cover", cover_ok, "n = 2, 3"));

    let mut spectra_bad = Vec::new();
    for b in c.nonzero_blocks() {
        match block_at_minus_one(&b.entries) {
            Some(m) if eventual_periodicity(&m, 64) != Periodicity::Inconclusive => {}
            _ => spectra_bad.push(format!("block {} at q = -1", b.flux)),
        }
        if wall_free {
            let g = index_graph(b);
            let sub = bi_active_submatrix(b, &g);
            if !char_polys_match_up_to_zeros(&b.entries, &sub) {
                spectra_bad.push(format!("block {} bi-active spectrum", b.flux));
            }
            for (num, den) in QS {
                if !sub.is_empty() && !perron_dominant(&block_at_q(&sub, num as f64 / den as f64), 1e-8) {
                    spectra_bad.push(format!("block {} Perron at q = {num}/{den}", b.flux));
                }
            }
        }
    }
    out.push(verdict("spectra", spectra_bad.is_empty(), spectra_bad.join("; ")));

    match extremal_flux_data(a, cap) {
        Ok(data) => {
            let mut bad = Vec::new();
            if wall_free {
                for &f in data.counts.keys() {
                    if !flip_class_connected(a, f, cap)? {
                        bad.push(f);
                    }
                }
                out.push(verdict("flips", bad.is_empty(), format!("disconnected flux classes: {bad:?}")));
            } else {
                out.push(skipped("flips", "walls present"));
            }
            let mut missing = Vec::new();
            for f in [data.f_min, data.f_max] {
                if find_nontrespassed_cut(a, f, CUT_CAP, cap)?.is_none() {
                    missing.push(f);
                }
            }
            out.push(verdict("cuts", missing.is_empty(), format!("fluxes without a cut: {missing:?}")));
            let shortest = a.shortest_cut_where(|_| true, a.num_squares() + 4).map_or(0, |c| c.len()) as i64;
            out.push(verdict(
                "flux-range",
                data.f_max - data.f_min <= shortest,
                format!("range {} against cut length {shortest}", data.f_max - data.f_min),
            ));
        }
        Err(e) => out.push(skipped("flips", e.to_string())),
    }

    let interior: i64 = a.interior_vertices().map(|v| 4 - a.vertex(v).degree() as i64).sum();
    out.push(verdict(
        "gauss-bonnet",
        a.total_boundary_curvature() + interior == 4 * a.euler_characteristic(),
        format!("boundary curvature {}", a.total_boundary_curvature()),
    ));

    match a.find_zigzag_cut() {
        Ok(cut) => {
            let w = build_weight(a, &cut, TreeChoice::Bfs)?;
            let null = triple(a, &w, &SquareLabeling::sorted(a)).has_null_side();
            out.push(verdict("zigzag-cut", null, "one of N-, N+ vanishes"));
        }
        Err(e) => out.push(verdict("zigzag-cut", false, e.to_string())),
    }
    Ok(out)
}
