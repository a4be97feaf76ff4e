//! Partition diagrams of gap increasing words.
//!
//! For a window length `n`, row `i` of the diagram holds the part `n_i + 1`
//! (a zero run plus its 1) on the left and its complement `n - n_i` on the
//! right, inside an `(n+1)`-wide rectangle. Rows above the pivot shade their
//! part, rows below it shade their complement, and
//! `f(n+1) = n + 2 + shaded area`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gap::{to_u64, GapClass, GapSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixDiagram {
    pub n: u64,
    /// `n_0 + 1, n_1 + 1, ...` for every run with `n_i + 1 <= n`, top row first.
    pub parts: Vec<u64>,
    /// `l(n)`: rows above shade their part, rows below their complement.
    pub pivot: usize,
    pub shaded_area: u64,
    /// At most one part: no factor of length `n+1` holds two 1's.
    pub trivial: bool,
}

impl PrefixDiagram {
    /// Builds the diagram from strictly increasing zero runs `n_0 < n_1 < ...`.
    pub fn from_runs(runs: &[u64], n: u64) -> Result<Self> {
        if runs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSequence("zero runs must be strictly increasing".into()));
        }
        let kept: Vec<u64> = runs.iter().copied().take_while(|&r| r < n).collect();
        let parts: Vec<u64> = kept.iter().map(|&r| r + 1).collect();
        // l(n): the last row whose run and the run above it fit in n - 2
        let pivot = (1..kept.len())
            .rev()
            .find(|&i| kept[i - 1] + kept[i] + 2 <= n)
            .unwrap_or(0);
        let above: u64 = kept[..pivot].iter().map(|&r| r + 1).sum();
        let below: u64 = kept.iter().skip(pivot + 1).map(|&r| n - r).sum();
        Ok(PrefixDiagram {
            n,
            trivial: parts.len() <= 1,
            parts,
            pivot,
            shaded_area: above + below,
        })
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// `f(n+1)` read off the diagram.
    pub fn complexity_next(&self) -> u64 {
        self.n + 2 + self.shaded_area
    }

    fn part_shaded(&self, row: usize) -> bool {
        row < self.pivot
    }

    fn complement_shaded(&self, row: usize) -> bool {
        row > self.pivot
    }
}

/// The diagram of a gap increasing word at window length `n`.
pub fn build_diagram(spec: &GapSpec, n: u64) -> Result<PrefixDiagram> {
    if spec.declared_class() != GapClass::StrictlyIncreasing {
        return Err(Error::ClassRequired {
            required: "strictly-increasing",
            declared: spec.declared_class(),
        });
    }
    let limit = BigInt::from(n);
    let mut runs = Vec::new();
    let mut i = 1;
    loop {
        let g = spec.gap(i);
        if g > limit {
            break;
        }
        runs.push(to_u64(&g)? - 1);
        i += 1;
    }
    PrefixDiagram::from_runs(&runs, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

pub fn render_diagram(diagram: &PrefixDiagram, format: DiagramFormat) -> String {
    match format {
        DiagramFormat::Ascii => render_ascii(diagram),
        DiagramFormat::Svg => render_svg(diagram),
    }
}

/// One line per row, longest row at the bottom: `#` shaded, `.` unshaded,
/// `|` between a part and its complement.
pub fn render_ascii(d: &PrefixDiagram) -> String {
    let mut out = String::new();
    for (row, &part) in d.parts.iter().enumerate() {
        let cell = |shaded: bool| if shaded { '#' } else { '.' };
        out.extend(std::iter::repeat_n(cell(d.part_shaded(row)), part as usize));
        out.push('|');
        out.extend(std::iter::repeat_n(
            cell(d.complement_shaded(row)),
            (d.n + 1 - part) as usize,
        ));
        out.push('\n');
    }
    out
}

const CELL: u64 = 20;

pub fn render_svg(d: &PrefixDiagram) -> String {
    let width = (d.n + 1) * CELL;
    let height = d.rows().max(1) as u64 * CELL;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = width + 2,
        h = height + 2
    );
    out.push_str(
        "<style>rect{stroke:#444;stroke-width:1}.partition{fill:#fff}.complement{fill:#fff}\
         .partition-shaded{fill:#8ab}.complement-shaded{fill:#db8}\
         polyline{fill:none;stroke:#000;stroke-width:3}</style>\n",
    );
    let _ = writeln!(out, r#"<g transform="translate(1,1)">"#);
    let _ = writeln!(
        out,
        r#"<rect class="partition" x="0" y="0" width="{width}" height="{height}"/>"#
    );
    for (row, &part) in d.parts.iter().enumerate() {
        let y = row as u64 * CELL;
        for col in 0..=d.n {
            let class = match (col < part, d.part_shaded(row), d.complement_shaded(row)) {
                (true, true, _) => "partition-shaded",
                (true, false, _) => "partition",
                (false, _, true) => "complement-shaded",
                (false, _, false) => "complement",
            };
            let _ = writeln!(
                out,
                r#"<rect class="{class}" x="{x}" y="{y}" width="{CELL}" height="{CELL}"/>"#,
                x = col * CELL
            );
        }
    }
    if !d.parts.is_empty() {
        let mut points = Vec::new();
        for (row, &part) in d.parts.iter().enumerate() {
            let x = part * CELL;
            points.push(format!("{x},{}", row as u64 * CELL));
            points.push(format!("{x},{}", (row as u64 + 1) * CELL));
        }
        let _ = writeln!(out, r#"<polyline points="{}"/>"#, points.join(" "));
    }
    out.push_str("</g>\n</svg>\n");
    out
}
