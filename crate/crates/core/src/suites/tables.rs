//! Plain-text tables of computed data.

use crate::algebra::{g, uv_w, Presentation};
use crate::calculus::{lambdas, Calculus, Derivation, Form, Tensor};
use crate::climit::{killing_fields, limit_fields, uv_derivation};
use crate::error::{Error, Result};
use crate::geometry::BraidMap;
use crate::scalar::Scalar;

pub const TABLES: &[&str] = &["fields", "sigma", "action", "lie"];

/// Render a named table.
pub fn table(name: &str) -> Result<String> {
    let rows = match name {
        "fields" => fields()?,
        "sigma" => sigma()?,
        "action" => action()?,
        "lie" => lie()?,
        other => return Err(Error::Other(format!("unknown table `{other}` (expected one of {})", TABLES.join(", ")))),
    };
    Ok(render(&rows))
}

fn render(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

fn row(cells: impl IntoIterator<Item = String>) -> Vec<String> {
    cells.into_iter().collect()
}

fn header(cells: &[&str]) -> Vec<String> {
    cells.iter().map(|s| s.to_string()).collect()
}

/// Components of `X_i` and of the Killing fields `X'_i`.
fn fields() -> Result<Vec<Vec<String>>> {
    let mut rows = vec![header(&["field", "d_u", "d_v"])];
    for (i, x) in limit_fields().iter().enumerate() {
        rows.push(row([format!("X{}", i + 1), x.au.to_string(), x.av.to_string()]));
    }
    for (i, x) in killing_fields().iter().enumerate() {
        rows.push(row([format!("X'{}", i + 1), x.au.to_string(), x.av.to_string()]));
    }
    Ok(rows)
}

fn sigma() -> Result<Vec<Vec<String>>> {
    let c = Calculus::plane();
    let s = BraidMap::wess_zumino(&c, &Scalar::h());
    let names = ["xi", "eta"];
    let mut rows = vec![header(&["a (x) b", "sigma(a (x) b)"])];
    for a in 0..2 {
        for b in 0..2 {
            let img = s.apply(&Tensor::basis(&c, &[a, b]), 0)?;
            rows.push(row([format!("{}(x){}", names[a], names[b]), img.to_string()]));
        }
    }
    Ok(rows)
}

fn action() -> Result<Vec<Vec<String>>> {
    let p = Presentation::uv();
    let gens = [g(&p, "u"), g(&p, "v"), uv_w()];
    let mut rows = vec![header(&["", "u", "v", "w"])];
    for a in 0..3 {
        let mut r = vec![format!("e{}", a + 1)];
        for f in &gens {
            r.push(uv_derivation(a, f)?.to_string());
        }
        rows.push(r);
    }
    Ok(rows)
}

fn lie() -> Result<Vec<Vec<String>>> {
    let c = Calculus::ext2();
    let es = lambdas().map(Derivation::Inner);
    let mut rows = vec![header(&["", "t1", "t2"])];
    for (a, e) in es.iter().enumerate() {
        let mut r = vec![format!("L{}", a + 1)];
        for b in 0..2 {
            r.push(Form::cogen(&c, b).lie(e)?.to_string());
        }
        rows.push(r);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_renders() {
        for name in TABLES {
            let t = table(name).unwrap();
            assert!(t.lines().count() >= 3, "{name}");
        }
        assert!(table("nope").is_err());
    }

    #[test]
    fn fields_table_lists_components() {
        let t = table("fields").unwrap();
        assert!(t.lines().any(|l| l.starts_with("X1 ") && l.contains('v')));
        assert!(t.lines().any(|l| l.starts_with("X'1") && l.contains('1')));
    }
}
