//! Label rasters, binary masks, and the morphology used downstream.
//!
//! Everything in this module is a pure value type: operations return new
//! rasters and never mutate their inputs, so facades can be processed on
//! concurrent workers without synchronization.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced while loading or validating rasters.
#[derive(Debug, Error)]
pub enum RasterError {
    #[error("cannot read raster file {path}: {source}")]
    FileUnreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot decode raster file {path}: {message}")]
    DecodeFailed { path: PathBuf, message: String },
    #[error("unsupported raster format: {0} (expected single-channel or palette-indexed, bit depth <= 8)")]
    UnsupportedFormat(String),
    #[error("raster value {value} at pixel index {pixel_index} has no class mapping")]
    UnmappedLabelValue { value: u8, pixel_index: usize },
    #[error("raster has zero width or height")]
    EmptyRaster,
    #[error("label grid of length {len} does not match {width}x{height}")]
    DimensionMismatch { len: usize, width: u32, height: u32 },
    #[error("invalid class mapping: {0}")]
    InvalidMapping(String),
    #[error("cannot write raster file {path}: {message}")]
    WriteFailed { path: PathBuf, message: String },
}

/// The 13 semantic classes of the CMP facade annotation convention.
///
/// `Unknown` is the ignored class: it is excluded from metric evaluation and
/// from the facade-surface denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[repr(u8)]
pub enum SemanticClass {
    Background = 0,
    Facade = 1,
    Window = 2,
    Door = 3,
    Cornice = 4,
    Sill = 5,
    Balcony = 6,
    Blind = 7,
    Molding = 8,
    Deco = 9,
    Pillar = 10,
    Shop = 11,
    Unknown = 12,
}

impl SemanticClass {
    pub const COUNT: usize = 13;

    /// All classes in id order.
    pub const ALL: [SemanticClass; Self::COUNT] = [
        SemanticClass::Background,
        SemanticClass::Facade,
        SemanticClass::Window,
        SemanticClass::Door,
        SemanticClass::Cornice,
        SemanticClass::Sill,
        SemanticClass::Balcony,
        SemanticClass::Blind,
        SemanticClass::Molding,
        SemanticClass::Deco,
        SemanticClass::Pillar,
        SemanticClass::Shop,
        SemanticClass::Unknown,
    ];

    /// The 12 classes evaluated by segmentation metrics (all except `Unknown`).
    pub const EVALUATED: [SemanticClass; 12] = [
        SemanticClass::Background,
        SemanticClass::Facade,
        SemanticClass::Window,
        SemanticClass::Door,
        SemanticClass::Cornice,
        SemanticClass::Sill,
        SemanticClass::Balcony,
        SemanticClass::Blind,
        SemanticClass::Molding,
        SemanticClass::Deco,
        SemanticClass::Pillar,
        SemanticClass::Shop,
    ];

    /// Classes subtracted as openings (step ii of mask construction).
    pub const OPENINGS: [SemanticClass; 3] = [
        SemanticClass::Window,
        SemanticClass::Door,
        SemanticClass::Shop,
    ];

    /// Classes subtracted as protrusions (step iii), in application order.
    pub const PROTRUSIONS: [SemanticClass; 7] = [
        SemanticClass::Balcony,
        SemanticClass::Cornice,
        SemanticClass::Sill,
        SemanticClass::Molding,
        SemanticClass::Deco,
        SemanticClass::Pillar,
        SemanticClass::Blind,
    ];

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn from_id(id: u8) -> Option<SemanticClass> {
        Self::ALL.get(id as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            SemanticClass::Background => "background",
            SemanticClass::Facade => "facade",
            SemanticClass::Window => "window",
            SemanticClass::Door => "door",
            SemanticClass::Cornice => "cornice",
            SemanticClass::Sill => "sill",
            SemanticClass::Balcony => "balcony",
            SemanticClass::Blind => "blind",
            SemanticClass::Molding => "molding",
            SemanticClass::Deco => "deco",
            SemanticClass::Pillar => "pillar",
            SemanticClass::Shop => "shop",
            SemanticClass::Unknown => "unknown",
        }
    }

    pub fn from_name(name: &str) -> Option<SemanticClass> {
        Self::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// Reporting group for facade-surface share statistics.
    ///
    /// `None` for `Background` and `Unknown`, which are outside the facade
    /// surface.
    pub fn group(self) -> Option<ClassGroup> {
        match self {
            SemanticClass::Background | SemanticClass::Unknown => None,
            SemanticClass::Facade => Some(ClassGroup::Wall),
            SemanticClass::Window | SemanticClass::Shop => Some(ClassGroup::Glazing),
            _ => Some(ClassGroup::Other),
        }
    }
}

impl fmt::Display for SemanticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class groups reported relative to the facade surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassGroup {
    Wall,
    Glazing,
    Other,
}

impl ClassGroup {
    pub const ALL: [ClassGroup; 3] = [ClassGroup::Wall, ClassGroup::Glazing, ClassGroup::Other];

    pub fn name(self) -> &'static str {
        match self {
            ClassGroup::Wall => "wall",
            ClassGroup::Glazing => "glazing",
            ClassGroup::Other => "other",
        }
    }
}

impl fmt::Display for ClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mapping from on-disk raster values to semantic classes.
///
/// The default follows the CMP ordering with 0 = background, 1 = facade, ...,
/// 12 = unknown. Annotation sets that encode classes differently can supply a
/// key-value mapping file (`<value> = <class-name>`, `#` comments allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassMapping {
    map: BTreeMap<u8, SemanticClass>,
}

impl Default for ClassMapping {
    fn default() -> Self {
        ClassMapping::cmp_default()
    }
}

impl ClassMapping {
    /// Identity mapping over the CMP class ids 0..=12.
    pub fn cmp_default() -> Self {
        let map = SemanticClass::ALL.iter().map(|&c| (c.id(), c)).collect();
        ClassMapping { map }
    }

    pub fn empty() -> Self {
        ClassMapping { map: BTreeMap::new() }
    }

    pub fn insert(&mut self, value: u8, class: SemanticClass) {
        self.map.insert(value, class);
    }

    pub fn class_for(&self, value: u8) -> Option<SemanticClass> {
        self.map.get(&value).copied()
    }

    /// Parses `value = class-name` lines; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self, RasterError> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (value, name) = line.split_once('=').ok_or_else(|| {
                RasterError::InvalidMapping(format!("line {}: expected `value = class`", lineno + 1))
            })?;
            let value: u8 = value.trim().parse().map_err(|_| {
                RasterError::InvalidMapping(format!("line {}: bad value `{}`", lineno + 1, value.trim()))
            })?;
            let class = SemanticClass::from_name(name.trim()).ok_or_else(|| {
                RasterError::InvalidMapping(format!("line {}: unknown class `{}`", lineno + 1, name.trim()))
            })?;
            map.insert(value, class);
        }
        if map.is_empty() {
            return Err(RasterError::InvalidMapping("mapping is empty".into()));
        }
        Ok(ClassMapping { map })
    }

    pub fn from_file(path: &Path) -> Result<Self, RasterError> {
        let mut text = String::new();
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|source| RasterError::FileUnreadable { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }
}

/// Per-pixel semantic class raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: u32,
    height: u32,
    labels: Vec<SemanticClass>,
}

impl LabelMap {
    pub fn new(width: u32, height: u32, labels: Vec<SemanticClass>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::EmptyRaster);
        }
        if labels.len() != width as usize * height as usize {
            return Err(RasterError::DimensionMismatch { len: labels.len(), width, height });
        }
        Ok(LabelMap { width, height, labels })
    }

    pub fn filled(width: u32, height: u32, class: SemanticClass) -> Self {
        assert!(width > 0 && height > 0, "label map dimensions must be positive");
        LabelMap {
            width,
            height,
            labels: vec![class; width as usize * height as usize],
        }
    }

    /// Builds a map by evaluating `f(x, y)` for every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> SemanticClass) -> Self {
        assert!(width > 0 && height > 0, "label map dimensions must be positive");
        let mut labels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                labels.push(f(x, y));
            }
        }
        LabelMap { width, height, labels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn class_at(&self, x: u32, y: u32) -> SemanticClass {
        self.labels[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, class: SemanticClass) {
        self.labels[y as usize * self.width as usize + x as usize] = class;
    }

    pub fn labels(&self) -> &[SemanticClass] {
        &self.labels
    }

    /// Pixel counts per class id.
    pub fn histogram(&self) -> [u64; SemanticClass::COUNT] {
        let mut hist = [0u64; SemanticClass::COUNT];
        for &c in &self.labels {
            hist[c.id() as usize] += 1;
        }
        hist
    }

    /// Writes the map as an 8-bit grayscale PNG of class ids. The result
    /// round-trips through [`load_label_map`] under the default mapping.
    pub fn write_gray_png(&self, path: &Path) -> Result<(), RasterError> {
        let file = File::create(path)
            .map_err(|source| RasterError::FileUnreadable { path: path.to_path_buf(), source })?;
        let mut enc = png::Encoder::new(BufWriter::new(file), self.width, self.height);
        enc.set_color(png::ColorType::Grayscale);
        enc.set_depth(png::BitDepth::Eight);
        let data: Vec<u8> = self.labels.iter().map(|c| c.id()).collect();
        enc.write_header()
            .and_then(|mut w| w.write_image_data(&data))
            .map_err(|e| RasterError::WriteFailed { path: path.to_path_buf(), message: e.to_string() })?;
        Ok(())
    }
}

/// Loads a single-channel or palette-indexed PNG and maps raster values to
/// classes. Any value missing from the mapping is an error, never a silent
/// default.
pub fn load_label_map(path: &Path, mapping: &ClassMapping) -> Result<LabelMap, RasterError> {
    let (width, height, values) = read_index_png(path)?;
    if width == 0 || height == 0 {
        return Err(RasterError::EmptyRaster);
    }
    let mut labels = Vec::with_capacity(values.len());
    for (pixel_index, &value) in values.iter().enumerate() {
        let class = mapping
            .class_for(value)
            .ok_or(RasterError::UnmappedLabelValue { value, pixel_index })?;
        labels.push(class);
    }
    LabelMap::new(width, height, labels)
}

/// Decodes a PNG to its raw per-pixel values (palette indices or gray levels).
fn read_index_png(path: &Path) -> Result<(u32, u32, Vec<u8>), RasterError> {
    let file = File::open(path)
        .map_err(|source| RasterError::FileUnreadable { path: path.to_path_buf(), source })?;
    let mut decoder = png::Decoder::new(BufReader::new(file));
    // IDENTITY keeps palette indices instead of expanding them to RGB.
    decoder.set_transformations(png::Transformations::IDENTITY);
    let mut reader = decoder
        .read_info()
        .map_err(|e| RasterError::DecodeFailed { path: path.to_path_buf(), message: e.to_string() })?;

    let info = reader.info();
    let color = info.color_type;
    let depth = info.bit_depth;
    match color {
        png::ColorType::Grayscale | png::ColorType::Indexed => {}
        other => return Err(RasterError::UnsupportedFormat(format!("color type {other:?}"))),
    }
    let bits = match depth {
        png::BitDepth::One => 1,
        png::BitDepth::Two => 2,
        png::BitDepth::Four => 4,
        png::BitDepth::Eight => 8,
        png::BitDepth::Sixteen => {
            return Err(RasterError::UnsupportedFormat("16-bit depth".into()));
        }
    };

    let buf_size = reader
        .output_buffer_size()
        .ok_or_else(|| RasterError::DecodeFailed { path: path.to_path_buf(), message: "image too large".into() })?;
    let mut buf = vec![0u8; buf_size];
    let out = reader
        .next_frame(&mut buf)
        .map_err(|e| RasterError::DecodeFailed { path: path.to_path_buf(), message: e.to_string() })?;
    let (width, height) = (out.width, out.height);

    let values = if bits == 8 {
        buf.truncate(width as usize * height as usize);
        buf
    } else {
        unpack_sub_byte_rows(&buf, width, height, bits)
    };
    Ok((width, height, values))
}

/// Unpacks 1/2/4-bit rows (MSB-first within each byte, rows byte-aligned).
fn unpack_sub_byte_rows(buf: &[u8], width: u32, height: u32, bits: u32) -> Vec<u8> {
    let row_bytes = (width as usize * bits as usize).div_ceil(8);
    let mask = (1u16 << bits) as u8 - 1;
    let mut values = Vec::with_capacity(width as usize * height as usize);
    for y in 0..height as usize {
        let row = &buf[y * row_bytes..(y + 1) * row_bytes];
        for x in 0..width as usize {
            let bit_off = x * bits as usize;
            let byte = row[bit_off / 8];
            let shift = 8 - bits as usize - (bit_off % 8);
            values.push((byte >> shift) & mask);
        }
    }
    values
}

/// Pixel adjacency for connected-component labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    #[serde(rename = "4", alias = "four")]
    Four = 4,
    #[serde(rename = "8", alias = "eight")]
    Eight = 8,
}

/// Row-major boolean raster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32) -> Self {
        Self::filled(width, height, false)
    }

    pub fn filled(width: u32, height: u32, value: bool) -> Self {
        assert!(width > 0 && height > 0, "mask dimensions must be positive");
        BinaryMask {
            width,
            height,
            bits: vec![value; width as usize * height as usize],
        }
    }

    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::EmptyRaster);
        }
        if bits.len() != width as usize * height as usize {
            return Err(RasterError::DimensionMismatch { len: bits.len(), width, height });
        }
        Ok(BinaryMask { width, height, bits })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        self.bits[y as usize * self.width as usize + x as usize] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of true pixels.
    pub fn count_true(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    pub fn same_dims(&self, other: &BinaryMask) -> bool {
        self.width == other.width && self.height == other.height
    }

    /// Clears every pixel that is true in `other`.
    pub fn subtract_assign(&mut self, other: &BinaryMask) {
        assert!(self.same_dims(other), "mask dimensions must match");
        for (b, &o) in self.bits.iter_mut().zip(&other.bits) {
            *b = *b && !o;
        }
    }

    pub fn union_assign(&mut self, other: &BinaryMask) {
        assert!(self.same_dims(other), "mask dimensions must match");
        for (b, &o) in self.bits.iter_mut().zip(&other.bits) {
            *b = *b || o;
        }
    }

    /// True iff every true pixel of `self` is also true in `other`.
    pub fn is_subset_of(&self, other: &BinaryMask) -> bool {
        self.same_dims(other) && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Coordinates of all true pixels in row-major order.
    pub fn iter_true(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let w = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| ((i as u32) % w, (i as u32) / w))
    }
}

/// Mask of pixels whose class is in `classes`; dimensions preserved.
pub fn class_mask(map: &LabelMap, classes: &[SemanticClass]) -> BinaryMask {
    assert!(!classes.is_empty(), "class set must be non-empty");
    let mut member = [false; SemanticClass::COUNT];
    for &c in classes {
        member[c.id() as usize] = true;
    }
    let bits = map.labels().iter().map(|c| member[c.id() as usize]).collect();
    BinaryMask {
        width: map.width(),
        height: map.height(),
        bits,
    }
}

/// Dilation by a square structuring element of side `2*radius_px + 1`
/// (Chebyshev ball). Radius 0 is the identity.
pub fn dilate(mask: &BinaryMask, radius_px: u32) -> BinaryMask {
    dilate_xy(mask, radius_px, radius_px)
}

/// Dilation by a rectangular structuring element with independent horizontal
/// and vertical radii. Used when buffers in meters map to different pixel
/// extents per axis (anisotropic scale factors).
pub fn dilate_xy(mask: &BinaryMask, radius_x_px: u32, radius_y_px: u32) -> BinaryMask {
    if radius_x_px == 0 && radius_y_px == 0 {
        return mask.clone();
    }
    let w = mask.width as usize;
    let h = mask.height as usize;
    let rx = radius_x_px as usize;
    let ry = radius_y_px as usize;

    // Separable: a pixel is within Chebyshev-rect distance (rx, ry) of a true
    // pixel iff a horizontal pass followed by a vertical pass marks it.
    let mut horiz = vec![false; w * h];
    let mut prefix = vec![0u32; w + 1];
    for y in 0..h {
        let row = &mask.bits[y * w..(y + 1) * w];
        for x in 0..w {
            prefix[x + 1] = prefix[x] + u32::from(row[x]);
        }
        let out = &mut horiz[y * w..(y + 1) * w];
        for x in 0..w {
            let lo = x.saturating_sub(rx);
            let hi = (x + rx + 1).min(w);
            out[x] = prefix[hi] > prefix[lo];
        }
    }

    let mut bits = vec![false; w * h];
    let mut col_prefix = vec![0u32; h + 1];
    for x in 0..w {
        for y in 0..h {
            col_prefix[y + 1] = col_prefix[y] + u32::from(horiz[y * w + x]);
        }
        for y in 0..h {
            let lo = y.saturating_sub(ry);
            let hi = (y + ry + 1).min(h);
            bits[y * w + x] = col_prefix[hi] > col_prefix[lo];
        }
    }

    BinaryMask {
        width: mask.width,
        height: mask.height,
        bits,
    }
}

/// Connected components of the true pixels with contiguous ids 1..=n assigned
/// in row-major first-encounter order; 0 is background.
#[derive(Debug, Clone)]
pub struct ComponentSet {
    width: u32,
    height: u32,
    labels: Vec<u32>,
    /// areas[id] = pixel count of component `id`; slot 0 is unused.
    areas: Vec<u64>,
}

impl ComponentSet {
    pub fn num_components(&self) -> usize {
        self.areas.len().saturating_sub(1)
    }

    pub fn label_at(&self, x: u32, y: u32) -> u32 {
        self.labels[y as usize * self.width as usize + x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn area(&self, id: u32) -> u64 {
        self.areas[id as usize]
    }

    /// `(id, area)` pairs, id ascending.
    pub fn areas(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.areas.iter().enumerate().skip(1).map(|(id, &a)| (id as u32, a))
    }

    pub fn total_area(&self) -> u64 {
        self.areas.iter().sum()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }
}

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new() -> Self {
        DisjointSets { parent: vec![0] }
    }

    fn make_set(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        id
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so first-encounter order survives.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

/// Two-pass union-find connected-component labeling.
pub fn connected_components(mask: &BinaryMask, connectivity: Connectivity) -> ComponentSet {
    let w = mask.width as usize;
    let h = mask.height as usize;
    let mut provisional = vec![0u32; w * h];
    let mut sets = DisjointSets::new();

    for y in 0..h {
        for x in 0..w {
            let idx = y * w + x;
            if !mask.bits[idx] {
                continue;
            }
            let mut neighbor = 0u32;
            let mut merge = |label: u32, neighbor: &mut u32, sets: &mut DisjointSets| {
                if label != 0 {
                    if *neighbor == 0 {
                        *neighbor = label;
                    } else {
                        sets.union(*neighbor, label);
                    }
                }
            };
            if x > 0 {
                merge(provisional[idx - 1], &mut neighbor, &mut sets);
            }
            if y > 0 {
                merge(provisional[idx - w], &mut neighbor, &mut sets);
                if connectivity == Connectivity::Eight {
                    if x > 0 {
                        merge(provisional[idx - w - 1], &mut neighbor, &mut sets);
                    }
                    if x + 1 < w {
                        merge(provisional[idx - w + 1], &mut neighbor, &mut sets);
                    }
                }
            }
            provisional[idx] = if neighbor == 0 { sets.make_set() } else { neighbor };
        }
    }

    // Second pass: compress to contiguous ids in first-encounter order.
    let mut remap = vec![0u32; sets.parent.len()];
    let mut labels = vec![0u32; w * h];
    let mut areas: Vec<u64> = vec![0];
    for idx in 0..w * h {
        if provisional[idx] == 0 {
            continue;
        }
        let root = sets.find(provisional[idx]);
        if remap[root as usize] == 0 {
            remap[root as usize] = areas.len() as u32;
            areas.push(0);
        }
        let id = remap[root as usize];
        labels[idx] = id;
        areas[id as usize] += 1;
    }

    ComponentSet {
        width: mask.width,
        height: mask.height,
        labels,
        areas,
    }
}

/// Removes connected components with area below `min_area_px`. Surviving
/// pixels keep their component membership; the result is idempotent at a
/// fixed threshold.
pub fn remove_small_components(
    mask: &BinaryMask,
    min_area_px: u64,
    connectivity: Connectivity,
) -> BinaryMask {
    assert!(min_area_px >= 1, "minimum component area must be >= 1");
    if min_area_px == 1 {
        return mask.clone();
    }
    let components = connected_components(mask, connectivity);
    let bits = components
        .labels()
        .iter()
        .map(|&id| id != 0 && components.area(id) >= min_area_px)
        .collect();
    BinaryMask {
        width: mask.width,
        height: mask.height,
        bits,
    }
}
