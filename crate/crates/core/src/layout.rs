//! Panel layout: maximal all-true rectangle search and grid fitting.
//!
//! Distances arriving in meters are resolved to whole millimeters before any
//! pixel conversion, so nominally exact inputs (0.02 m gaps, 935 mm modules)
//! stay exact through the arithmetic. Pixel conversions round half up for
//! module dimensions and gaps; clearance footprints round up.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::raster::BinaryMask;
use crate::suitability::FacadeGeometry;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
}

/// Physical PV module: dimensions in millimeters, nameplate rating in Wp.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelSpec {
    pub name: String,
    pub width_mm: u32,
    pub height_mm: u32,
    pub rating_wp: f64,
}

impl PanelSpec {
    /// Large facade module: 935 x 1300 mm, 225 Wp.
    pub fn large() -> Self {
        PanelSpec {
            name: "L".into(),
            width_mm: 935,
            height_mm: 1300,
            rating_wp: 225.0,
        }
    }

    /// Small facade module: 720 x 875 mm, 110 Wp.
    pub fn small() -> Self {
        PanelSpec {
            name: "S".into(),
            width_mm: 720,
            height_mm: 875,
            rating_wp: 110.0,
        }
    }

    /// Default two-module catalog, large first.
    pub fn default_catalog() -> Vec<PanelSpec> {
        vec![PanelSpec::large(), PanelSpec::small()]
    }

    /// (width, height) in millimeters under the given orientation.
    pub fn oriented_mm(&self, orientation: Orientation) -> (u32, u32) {
        match orientation {
            Orientation::Portrait => (self.width_mm, self.height_mm),
            Orientation::Landscape => (self.height_mm, self.width_mm),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Portrait,
    Landscape,
}

/// Pixels-per-meter conversion factors for one facade image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleFactors {
    pub x_px_per_m: f64,
    pub y_px_per_m: f64,
}

impl ScaleFactors {
    pub fn new(x_px_per_m: f64, y_px_per_m: f64) -> Result<Self, LayoutError> {
        if !(x_px_per_m.is_finite() && x_px_per_m > 0.0 && y_px_per_m.is_finite() && y_px_per_m > 0.0)
        {
            return Err(LayoutError::InvalidGeometry(format!(
                "scale factors must be finite and positive, got ({x_px_per_m}, {y_px_per_m})"
            )));
        }
        Ok(ScaleFactors { x_px_per_m, y_px_per_m })
    }
}

/// s_x = width_px / width_m, s_y = height_px / height_m.
pub fn scale_factors(
    geom: &FacadeGeometry,
    width_px: u32,
    height_px: u32,
) -> Result<ScaleFactors, LayoutError> {
    if width_px == 0 || height_px == 0 {
        return Err(LayoutError::InvalidGeometry("raster dimensions must be positive".into()));
    }
    if !(geom.width_m.is_finite() && geom.width_m > 0.0)
        || !(geom.height_m.is_finite() && geom.height_m > 0.0)
    {
        return Err(LayoutError::InvalidGeometry(format!(
            "facade dimensions must be finite and positive, got {} x {} m",
            geom.width_m, geom.height_m
        )));
    }
    ScaleFactors::new(width_px as f64 / geom.width_m, height_px as f64 / geom.height_m)
}

/// Axis-aligned pixel rectangle; `(x, y)` is the top-left corner.
///
/// A search over an all-false mask yields the zero-area rectangle
/// `{0, 0, 0, 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PixelRect {
    pub x: u32,
    pub y: u32,
    pub w: u32,
    pub h: u32,
}

impl PixelRect {
    pub const ZERO: PixelRect = PixelRect { x: 0, y: 0, w: 0, h: 0 };

    pub fn area(&self) -> u64 {
        self.w as u64 * self.h as u64
    }

    pub fn contains(&self, other: &PixelRect) -> bool {
        other.x >= self.x
            && other.y >= self.y
            && other.x as u64 + other.w as u64 <= self.x as u64 + self.w as u64
            && other.y as u64 + other.h as u64 <= self.y as u64 + self.h as u64
    }
}

/// Largest axis-aligned rectangle containing only true pixels.
///
/// Histogram-of-heights per row with a monotone stack. Ties on area are
/// broken by the smallest top-left corner, `y` first then `x`.
pub fn largest_rectangle(mask: &BinaryMask) -> PixelRect {
    let w = mask.width() as usize;
    let h = mask.height() as usize;
    let mut heights = vec![0u32; w];
    let mut best = PixelRect::ZERO;
    let mut best_area = 0u64;

    // (start column, height); heights strictly increase from bottom of stack.
    let mut stack: Vec<(usize, u32)> = Vec::with_capacity(w + 1);

    for y in 0..h {
        for x in 0..w {
            heights[x] = if mask.get(x as u32, y as u32) { heights[x] + 1 } else { 0 };
        }
        stack.clear();
        for x in 0..=w {
            let cur = if x < w { heights[x] } else { 0 };
            let mut start = x;
            while let Some(&(s, height)) = stack.last() {
                if height <= cur {
                    break;
                }
                stack.pop();
                let area = height as u64 * (x - s) as u64;
                let top = y as u32 + 1 - height;
                if area > best_area
                    || (area == best_area
                        && area > 0
                        && (top, s as u32) < (best.y, best.x))
                {
                    best_area = area;
                    best = PixelRect { x: s as u32, y: top, w: (x - s) as u32, h: height };
                }
                start = s;
            }
            // Equal heights extend the existing entry; its start stays leftmost.
            if cur > 0 && stack.last().map_or(true, |&(_, height)| height < cur) {
                stack.push((start, cur));
            }
        }
    }
    best
}

/// Round-half-up conversion of a millimeter length into pixels, floored at
/// one pixel so module footprints never degenerate.
fn panel_mm_to_px(mm: u32, px_per_m: f64) -> u32 {
    ((mm as f64 * px_per_m / 1000.0).round() as u32).max(1)
}

fn gap_mm_to_px(mm: u64, px_per_m: f64) -> u32 {
    (mm as f64 * px_per_m / 1000.0).round() as u32
}

/// Snaps a metric distance to whole millimeters.
pub(crate) fn to_mm(meters: f64) -> u64 {
    debug_assert!(meters >= 0.0 && meters.is_finite());
    (meters * 1000.0).round() as u64
}

/// Module-plus-gap footprints in pixels for one orientation.
fn pitch_px(panel: &PanelSpec, orientation: Orientation, gap_m: f64, sf: &ScaleFactors) -> GridPitch {
    let (w_mm, h_mm) = panel.oriented_mm(orientation);
    let gap_mm = to_mm(gap_m);
    GridPitch {
        panel_w_px: panel_mm_to_px(w_mm, sf.x_px_per_m),
        panel_h_px: panel_mm_to_px(h_mm, sf.y_px_per_m),
        gap_x_px: gap_mm_to_px(gap_mm, sf.x_px_per_m),
        gap_y_px: gap_mm_to_px(gap_mm, sf.y_px_per_m),
    }
}

#[derive(Debug, Clone, Copy)]
struct GridPitch {
    panel_w_px: u32,
    panel_h_px: u32,
    gap_x_px: u32,
    gap_y_px: u32,
}

/// n = floor((extent + gap) / (panel + gap)), the number of modules that fit
/// along one axis with `gap` spacing between neighbors.
fn axis_count(extent_px: u32, panel_px: u32, gap_px: u32) -> u32 {
    ((extent_px as u64 + gap_px as u64) / (panel_px as u64 + gap_px as u64)) as u32
}

/// Module counts per axis inside `rect` for the given panel and orientation.
/// Both counts are zero whenever a single module does not fit.
pub fn fit_grid(
    rect: &PixelRect,
    panel: &PanelSpec,
    orientation: Orientation,
    gap_m: f64,
    sf: &ScaleFactors,
) -> (u32, u32) {
    let pitch = pitch_px(panel, orientation, gap_m, sf);
    (
        axis_count(rect.w, pitch.panel_w_px, pitch.gap_x_px),
        axis_count(rect.h, pitch.panel_h_px, pitch.gap_y_px),
    )
}

/// Pixel area of one module footprint including a clearance gap on every
/// side: ceil((p_w + 2g) * s_x) * ceil((p_h + 2g) * s_y). Feeds the
/// minimum-component threshold of suitability-mask construction.
pub fn min_panel_area_px(panel: &PanelSpec, gap_m: f64, sf: &ScaleFactors) -> u64 {
    let gap_mm = to_mm(gap_m);
    let w_mm = panel.width_mm as u64 + 2 * gap_mm;
    let h_mm = panel.height_mm as u64 + 2 * gap_mm;
    let w_px = (w_mm as f64 * sf.x_px_per_m / 1000.0).ceil() as u64;
    let h_px = (h_mm as f64 * sf.y_px_per_m / 1000.0).ceil() as u64;
    w_px * h_px
}

/// A fitted module grid inside the maximal rectangle of one mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelLayout {
    pub rect: PixelRect,
    pub panel: PanelSpec,
    pub orientation: Orientation,
    pub n_x: u32,
    pub n_y: u32,
    pub gap_m: f64,
    /// Per-module pixel rectangles, centered in `rect`, row-major.
    pub placements: Vec<PixelRect>,
    /// Rectangle area not covered by modules, in pixels.
    pub leftover_area_px: u64,
}

impl PanelLayout {
    pub fn module_count(&self) -> u32 {
        self.n_x * self.n_y
    }

    /// Total pixel area covered by placed modules.
    pub fn placed_area_px(&self) -> u64 {
        self.placements.iter().map(PixelRect::area).sum()
    }

    /// Installed peak DC capacity in kWp for the placed modules.
    pub fn peak_kwp(&self) -> f64 {
        self.module_count() as f64 * self.panel.rating_wp / 1000.0
    }
}

/// Fits each catalog module into the largest rectangle of `mask`, testing
/// portrait and landscape. The orientation with the larger module count wins;
/// count ties go to the smaller leftover area, then to portrait. Partial
/// modules are never emitted.
pub fn best_layout(
    mask: &BinaryMask,
    catalog: &[PanelSpec],
    gap_m: f64,
    sf: &ScaleFactors,
) -> Vec<PanelLayout> {
    assert!(!catalog.is_empty(), "panel catalog must be non-empty");
    let rect = largest_rectangle(mask);
    catalog
        .iter()
        .map(|panel| best_layout_in_rect(&rect, panel, gap_m, sf))
        .collect()
}

fn best_layout_in_rect(
    rect: &PixelRect,
    panel: &PanelSpec,
    gap_m: f64,
    sf: &ScaleFactors,
) -> PanelLayout {
    let mut chosen: Option<(Orientation, GridPitch, u32, u32, u64)> = None;
    for orientation in [Orientation::Portrait, Orientation::Landscape] {
        let pitch = pitch_px(panel, orientation, gap_m, sf);
        let n_x = axis_count(rect.w, pitch.panel_w_px, pitch.gap_x_px);
        let n_y = axis_count(rect.h, pitch.panel_h_px, pitch.gap_y_px);
        let count = n_x as u64 * n_y as u64;
        let covered = count * pitch.panel_w_px as u64 * pitch.panel_h_px as u64;
        let leftover = rect.area() - covered;
        let better = match &chosen {
            None => true,
            Some((_, _, cx, cy, clo)) => {
                let ccount = *cx as u64 * *cy as u64;
                count > ccount || (count == ccount && leftover < *clo)
            }
        };
        if better {
            chosen = Some((orientation, pitch, n_x, n_y, leftover));
        }
    }
    let (orientation, pitch, n_x, n_y, leftover_area_px) = chosen.unwrap();

    let mut placements = Vec::with_capacity((n_x * n_y) as usize);
    if n_x > 0 && n_y > 0 {
        let grid_w = n_x * pitch.panel_w_px + (n_x - 1) * pitch.gap_x_px;
        let grid_h = n_y * pitch.panel_h_px + (n_y - 1) * pitch.gap_y_px;
        let x0 = rect.x + (rect.w - grid_w) / 2;
        let y0 = rect.y + (rect.h - grid_h) / 2;
        for j in 0..n_y {
            for i in 0..n_x {
                placements.push(PixelRect {
                    x: x0 + i * (pitch.panel_w_px + pitch.gap_x_px),
                    y: y0 + j * (pitch.panel_h_px + pitch.gap_y_px),
                    w: pitch.panel_w_px,
                    h: pitch.panel_h_px,
                });
            }
        }
    }

    PanelLayout {
        rect: *rect,
        panel: panel.clone(),
        orientation,
        n_x,
        n_y,
        gap_m,
        placements,
        leftover_area_px,
    }
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Brute-force references kept independent of the implementations above.

    use super::PixelRect;
    use crate::raster::BinaryMask;

    /// Exhaustive search over all axis-aligned rectangles via a 2-D prefix
    /// sum; returns the maximal-area rectangle with the smallest (y, x)
    /// top-left corner.
    pub fn brute_force_largest_rectangle(mask: &BinaryMask) -> PixelRect {
        let w = mask.width() as usize;
        let h = mask.height() as usize;
        let mut prefix = vec![0u32; (w + 1) * (h + 1)];
        for y in 0..h {
            for x in 0..w {
                prefix[(y + 1) * (w + 1) + x + 1] = prefix[y * (w + 1) + x + 1]
                    + prefix[(y + 1) * (w + 1) + x]
                    - prefix[y * (w + 1) + x]
                    + u32::from(mask.get(x as u32, y as u32));
            }
        }
        let sum = |x0: usize, y0: usize, x1: usize, y1: usize| -> u32 {
            prefix[y1 * (w + 1) + x1] + prefix[y0 * (w + 1) + x0]
                - prefix[y0 * (w + 1) + x1]
                - prefix[y1 * (w + 1) + x0]
        };
        let mut best = PixelRect::ZERO;
        let mut best_area = 0u64;
        for y0 in 0..h {
            for x0 in 0..w {
                for y1 in (y0 + 1)..=h {
                    for x1 in (x0 + 1)..=w {
                        let area = ((x1 - x0) * (y1 - y0)) as u64;
                        if sum(x0, y0, x1, y1) as u64 == area
                            && (area > best_area
                                || (area == best_area
                                    && (y0 as u32, x0 as u32) < (best.y, best.x)))
                        {
                            best_area = area;
                            best = PixelRect {
                                x: x0 as u32,
                                y: y0 as u32,
                                w: (x1 - x0) as u32,
                                h: (y1 - y0) as u32,
                            };
                        }
                    }
                }
            }
        }
        best
    }

    /// 1-D placement enumeration: the largest k with k panels and k-1 gaps
    /// inside the extent.
    pub fn brute_force_axis_count(extent_px: u32, panel_px: u32, gap_px: u32) -> u32 {
        let mut k = 0u64;
        loop {
            let next = k + 1;
            let needed = next * panel_px as u64 + (next - 1) * gap_px as u64;
            if needed > extent_px as u64 {
                return k as u32;
            }
            k = next;
        }
    }
}
