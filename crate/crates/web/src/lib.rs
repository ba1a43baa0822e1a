//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every exported function returns a JSON string. The `*_json` functions hold
//! the logic and are plain Rust so they can be tested natively.

use polygon_partitions::census::{self, ModularShape};
use polygon_partitions::cli::{self, parse_colors, Params, Scenario};
use polygon_partitions::oracle;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest polygon the demo draws; enumeration grows like the Schroeder numbers.
pub const MAX_DRAWN_SIDES: usize = 9;

/// Counts are passed to JavaScript as decimal strings.
type Counted = String;

#[derive(Serialize)]
struct DrawnDissection {
    text: String,
    cells: Vec<Vec<usize>>,
    weight: Counted,
}

#[derive(Serialize)]
struct DissectionList {
    sides: usize,
    total_weight: Counted,
    dissections: Vec<DrawnDissection>,
}

/// Dissections of a convex `sides`-gon whose cells all have an admissible
/// side count and a nonzero weight, with their cells as vertex chains.
pub fn dissections_json(sides: usize, a: u32, b: u32, colors: &str) -> Result<String, String> {
    if sides > MAX_DRAWN_SIDES {
        return Err(format!("at most {MAX_DRAWN_SIDES} sides can be drawn"));
    }
    let shape = ModularShape::new(a, b).map_err(|e| e.to_string())?;
    let colors = parse_colors(colors).map_err(|e| e.to_string())?;
    let mut total: u128 = 0;
    let mut listed = Vec::new();
    for d in oracle::enumerate_dissections(sides, oracle::DEFAULT_CAP).map_err(|e| e.to_string())? {
        let cells = d.cells();
        let weight = cells.iter().try_fold(1u128, |w, c| {
            let j = shape.index_of(c.len())?;
            Some(w * u128::from(colors.weight(j)))
        });
        match weight {
            Some(w) if w > 0 => {
                total += w;
                listed.push(DrawnDissection { text: d.to_string(), cells, weight: w.to_string() });
            }
            _ => {}
        }
    }
    let list = DissectionList { sides, total_weight: total.to_string(), dissections: listed };
    serde_json::to_string(&list).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct TableRow {
    sides: usize,
    by_cells: Vec<(usize, Counted)>,
    total: Counted,
}

/// Weighted counts for polygons with `3..=max_sides` sides, split by number
/// of cells, from the closed form.
pub fn count_table_json(a: u32, b: u32, colors: &str, max_sides: usize) -> Result<String, String> {
    let shape = ModularShape::new(a, b).map_err(|e| e.to_string())?;
    let colors = parse_colors(colors).map_err(|e| e.to_string())?;
    let rows = (3..=max_sides)
        .map(|sides| {
            let table = census::count_table(shape, &colors, sides - 2).map_err(|e| e.to_string())?;
            Ok(TableRow {
                sides,
                by_cells: table.iter().map(|(k, v)| (k, v.to_string())).collect(),
                total: table.total().to_string(),
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Terms `1..=max_n` of a named scenario; `q` and `d` are ignored when zero.
pub fn sequence_json(scenario: &str, max_n: usize, q: usize, d: usize, colors: &str) -> Result<String, String> {
    let scenario: Scenario =
        serde_json::from_value(serde_json::Value::String(scenario.to_string())).map_err(|_| format!("unknown scenario {scenario:?}"))?;
    let params = Params {
        q: (q > 0).then_some(q),
        d: (d > 0).then_some(d),
        colors: Some(colors.to_string()),
    };
    let record = cli::sequence(scenario, &params, max_n).map_err(|e| format!("{e:#}"))?;
    serde_json::to_string(&record).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn dissections(sides: usize, a: u32, b: u32, colors: &str) -> Result<String, JsError> {
    dissections_json(sides, a, b, colors).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = countTable)]
pub fn count_table(a: u32, b: u32, colors: &str, max_sides: usize) -> Result<String, JsError> {
    count_table_json(a, b, colors, max_sides).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sequence(scenario: &str, max_n: usize, q: usize, d: usize, colors: &str) -> Result<String, JsError> {
    sequence_json(scenario, max_n, q, d, colors).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn pentagon_dissections() {
        let v = parse(dissections_json(5, 1, 2, "default=1"));
        assert_eq!(v["dissections"].as_array().unwrap().len(), 11);
        assert_eq!(v["total_weight"], "11");
        assert_eq!(v["dissections"][0]["cells"][0][0], 0);
    }

    #[test]
    fn dissections_filtered_by_shape_and_colors() {
        let v = parse(dissections_json(6, 2, 2, "default=1"));
        assert_eq!(v["total_weight"], "4");
        let v = parse(dissections_json(6, 1, 2, "default=1,1=0"));
        assert_eq!(v["total_weight"], "4");
        let v = parse(dissections_json(5, 1, 2, "default=0,1=2"));
        assert_eq!(v["total_weight"], "40");
        assert!(dissections_json(12, 1, 2, "default=1").is_err());
    }

    #[test]
    fn table_rows() {
        let v = parse(count_table_json(1, 2, "default=1", 6));
        assert_eq!(v[2]["sides"], 5);
        assert_eq!(v[2]["total"], "11");
        assert_eq!(v[3]["by_cells"][1][1], "9");
        assert!(count_table_json(1, 1, "default=1", 6).is_err());
    }

    #[test]
    fn sequences() {
        let v = parse(sequence_json("based_triangle", 3, 0, 0, "default=1"));
        assert_eq!(v["terms"][2][1], "28");
        let v = parse(sequence_json("avoid", 4, 2, 0, "default=1"));
        assert_eq!(v["terms"][3][1], "21");
        assert!(sequence_json("nope", 3, 0, 0, "default=1").is_err());
        assert!(sequence_json("avoid", 3, 0, 0, "default=1").is_err());
    }
}
