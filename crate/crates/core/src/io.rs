//! Text formats for surfaces and JSON for polynomials.
//!
//! Grid regions are lines of `#` (square) and `.` (empty), row 0 at the top;
//! `o` is read as a square too, so ASCII dumps load back. Gluing files list
//!
//! ```text
//! squares 8
//! colors bwbwbwbw
//! outer 0 0
//! 0 1 1 3
//! ```
//!
//! with one `square side square side` line per glued pair. `outer` is optional
//! and names a boundary side on the outer boundary. `%` starts a comment in
//! gluing files. A file whose first token is `squares` is a gluing file.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::surface::{Color, QuadSurface, SideRef};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

pub fn is_gluing_text(text: &str) -> bool {
    text.split_whitespace().next() == Some("squares")
}

/// Cells of a grid region, `y` increasing upwards.
pub fn parse_grid_cells(text: &str) -> Result<Vec<(i64, i64)>> {
    let rows: Vec<&str> = text.lines().collect();
    let last = rows.iter().rposition(|r| !r.trim().is_empty()).ok_or(Error::EmptyRegion)?;
    let mut cells = Vec::new();
    for (r, row) in rows[..=last].iter().enumerate() {
        for (c, ch) in row.trim_end().chars().enumerate() {
            match ch {
                '#' | 'o' => cells.push((c as i64, (last - r) as i64)),
                '.' | ' ' => {}
                other => return Err(parse_err(r + 1, c + 1, format!("unexpected character {other:?}"))),
            }
        }
    }
    if cells.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(cells)
}

pub fn parse_grid(text: &str) -> Result<QuadSurface> {
    QuadSurface::from_grid(&parse_grid_cells(text)?)
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Tokens<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('%').next().unwrap_or("");
            let mut items = Vec::new();
            let mut start = None;
            for (c, ch) in body.char_indices() {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(c),
                    (true, Some(s)) => {
                        items.push((s, &body[s..c]));
                        start = None;
                    }
                    _ => {}
                }
            }
            if let Some(s) = start {
                items.push((s, &body[s..]));
            }
            (!items.is_empty()).then_some(Tokens { line: i + 1, items })
        })
        .collect()
}

fn number(t: &Tokens, k: usize, bound: usize, what: &str) -> Result<usize> {
    let (col, s) = t.items[k];
    let v: usize = s.parse().map_err(|_| parse_err(t.line, col + 1, format!("expected {what}, found {s:?}")))?;
    if v >= bound {
        return Err(parse_err(t.line, col + 1, format!("{what} {v} out of range")));
    }
    Ok(v)
}

fn arity(t: &Tokens, n: usize) -> Result<()> {
    if t.items.len() != n {
        let col = t.items.get(n).map_or(t.items[0].0, |x| x.0);
        return Err(parse_err(t.line, col + 1, format!("expected {n} fields, found {}", t.items.len())));
    }
    Ok(())
}

pub fn parse_gluing(text: &str) -> Result<QuadSurface> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let head = it.next().ok_or(Error::EmptyRegion)?;
    if head.items[0].1 != "squares" {
        return Err(parse_err(head.line, head.items[0].0 + 1, "expected `squares N`"));
    }
    arity(head, 2)?;
    let n = number(head, 1, usize::MAX, "square count")?;
    let mut colors: Option<Vec<Color>> = None;
    let mut outer: Option<SideRef> = None;
    let mut glue: Vec<[Option<SideRef>; 4]> = vec![[None; 4]; n];
    for t in it {
        match t.items[0].1 {
            "colors" => {
                let (col, _) = t.items[0];
                let word: String = t.items[1..].iter().map(|x| x.1).collect();
                let mut out = Vec::with_capacity(n);
                for (k, ch) in word.chars().enumerate() {
                    out.push(match ch {
                        'b' | 'B' => Color::Black,
                        'w' | 'W' => Color::White,
                        _ => return Err(parse_err(t.line, col + 1, format!("color {k} is {ch:?}, expected b or w"))),
                    });
                }
                if out.len() != n {
                    return Err(parse_err(t.line, col + 1, format!("{} colors for {n} squares", out.len())));
                }
                colors = Some(out);
            }
            "outer" => {
                arity(t, 3)?;
                outer = Some((number(t, 1, n, "square")?, number(t, 2, 4, "side")? as u8));
            }
            _ => {
                arity(t, 4)?;
                let a = (number(t, 0, n, "square")?, number(t, 1, 4, "side")? as u8);
                let b = (number(t, 2, n, "square")?, number(t, 3, 4, "side")? as u8);
                for (x, y) in [(a, b), (b, a)] {
                    let slot = &mut glue[x.0][x.1 as usize];
                    if slot.is_some_and(|old| old != y) {
                        return Err(parse_err(t.line, t.items[0].0 + 1, format!("side {} {} glued twice", x.0, x.1)));
                    }
                    *slot = Some(y);
                }
            }
        }
    }
    let colors = colors.ok_or_else(|| parse_err(head.line, 1, "missing `colors` line"))?;
    QuadSurface::from_gluing(glue, colors, outer)
}

/// Grid or gluing text, chosen by the first token.
pub fn parse_surface(text: &str) -> Result<QuadSurface> {
    if is_gluing_text(text) {
        parse_gluing(text)
    } else {
        parse_grid(text)
    }
}

pub fn to_gluing_text(s: &QuadSurface) -> String {
    let mut out = format!("squares {}\ncolors ", s.num_squares());
    for &c in s.colors() {
        out.push(if c == Color::Black { 'b' } else { 'w' });
    }
    out.push('\n');
    if let Some(&sd) = s.outer_component().and_then(|c| s.boundary_components()[c].first()) {
        let (sq, side) = s.side(sd).left;
        out.push_str(&format!("outer {sq} {side}\n"));
    }
    for (sq, g) in s.glue_table().iter().enumerate() {
        for (side, target) in g.iter().enumerate() {
            if let Some((t, ts)) = *target {
                if (sq, side as u8) < (t, ts) {
                    out.push_str(&format!("{sq} {side} {t} {ts}\n"));
                }
            }
        }
    }
    out
}

pub fn poly_to_json(p: &LaurentPoly) -> serde_json::Value {
    serde_json::to_value(p.to_triples()).expect("triples serialize")
}

pub fn poly_from_json(text: &str) -> Result<LaurentPoly> {
    let triples: Vec<(i64, i64, String)> = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    LaurentPoly::from_triples(&triples)
}
