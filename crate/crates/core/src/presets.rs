//! Profile ingestion and the preset catalog.
//!
//! A data directory holds one profile per file, named `<kind>.<name>.csv`
//! for spectra and `sensor.<name>.profile` for sensors. Spectral CSVs carry
//! a two-column header (`wavelength_nm,<value>`) and may start with `#`
//! comment lines; `# key: value` comments are kept as metadata and the
//! `provenance` key records where the numbers came from.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{has_errors, Diagnostic};
use crate::propagation::{LightKind, SurfaceMaterial, WaterProfile};
use crate::sensor::SensorModel;
use crate::spectral::{Spectrum, UnitRole, WavelengthGrid, MAX_WAVELENGTH_NM, MIN_WAVELENGTH_NM};

/// Environment variable naming the preset directory.
pub const DATA_DIR_ENV: &str = "UWCAM_DATA_DIR";
pub const DEFAULT_DATA_DIR: &str = "./data";

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("cannot read data directory {path}: {source}")]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// `UWCAM_DATA_DIR` if set, otherwise `./data`.
pub fn data_dir_from_env() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_DATA_DIR))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Water,
    Light,
    Material,
    Lens,
    Qe,
    Sensor,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 6] = [
        ProfileKind::Water,
        ProfileKind::Light,
        ProfileKind::Material,
        ProfileKind::Lens,
        ProfileKind::Qe,
        ProfileKind::Sensor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Water => "water",
            ProfileKind::Light => "light",
            ProfileKind::Material => "material",
            ProfileKind::Lens => "lens",
            ProfileKind::Qe => "qe",
            ProfileKind::Sensor => "sensor",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str() == s)
    }

    pub fn extension(self) -> &'static str {
        match self {
            ProfileKind::Sensor => "profile",
            _ => "csv",
        }
    }

    /// Name of the value column in the CSV header.
    pub fn value_column(self) -> Option<&'static str> {
        match self {
            ProfileKind::Water => Some("b_per_m"),
            ProfileKind::Light => Some("relative_power"),
            ProfileKind::Material => Some("reflectance"),
            ProfileKind::Lens => Some("transmission"),
            ProfileKind::Qe => Some("qe"),
            ProfileKind::Sensor => None,
        }
    }

    fn role(self) -> UnitRole {
        match self {
            ProfileKind::Water => UnitRole::Attenuation,
            ProfileKind::Light => UnitRole::RelativePower,
            _ => UnitRole::Dimensionless,
        }
    }

    fn range_code(self) -> &'static str {
        match self {
            ProfileKind::Material => "reflectance-out-of-range",
            ProfileKind::Lens => "transmission-out-of-range",
            _ => "qe-out-of-range",
        }
    }
}

impl std::fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A spectral CSV exactly as read, before any normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvProfile {
    pub spectrum: Spectrum,
    pub metadata: Vec<(String, String)>,
}

impl CsvProfile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// On-disk sensor description. Every field is mandatory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensorProfileDoc {
    pub name: String,
    pub pixel_area_m2: f64,
    pub resolution_x: u32,
    pub resolution_y: u32,
    pub sensor_size_x_mm: f64,
    pub sensor_size_y_mm: f64,
    pub qe_csv: String,
    pub system_gain_dn_per_e: f64,
    pub dark_signal_dn: f64,
    pub dark_noise_var_e2: f64,
    pub bit_depth: u32,
    pub monochrome: bool,
}

impl SensorProfileDoc {
    pub fn build(&self, qe: Spectrum) -> Result<SensorModel, crate::sensor::SensorError> {
        SensorModel::new(
            self.name.clone(),
            self.pixel_area_m2,
            (self.resolution_x, self.resolution_y),
            (self.sensor_size_x_mm, self.sensor_size_y_mm),
            qe,
            self.system_gain_dn_per_e,
            self.dark_signal_dn,
            self.dark_noise_var_e2,
            self.bit_depth,
            self.monochrome,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawProfile {
    Csv(CsvProfile),
    Sensor(SensorProfileDoc),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Water(WaterProfile),
    /// Unit-integral spectral shape.
    Light {
        spectrum: Spectrum,
        kind: LightKind,
        normalization_factor: f64,
    },
    Material(SurfaceMaterial),
    Lens(Spectrum),
    Qe(Spectrum),
    Sensor(SensorModel),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedProfile {
    pub kind: ProfileKind,
    pub profile: Profile,
    pub raw: RawProfile,
    pub provenance: Option<String>,
    /// Warnings and notes; never errors.
    pub diagnostics: Vec<Diagnostic>,
}

/// Parses a spectral CSV; the grid invariants are reported per line.
pub fn parse_spectrum_csv(kind: ProfileKind, raw: &[u8]) -> Result<(CsvProfile, Vec<Diagnostic>), Vec<Diagnostic>> {
    let column = kind.value_column().expect("spectral kind");
    let text = match std::str::from_utf8(raw) {
        Ok(t) => t,
        Err(e) => return Err(vec![Diagnostic::error("parse-error", format!("not UTF-8: {e}"))]),
    };

    let mut metadata = Vec::new();
    for line in text.lines() {
        let Some(comment) = line.trim_start().strip_prefix('#') else {
            continue;
        };
        if let Some((k, v)) = comment.split_once(':') {
            let key = k.trim();
            if !key.is_empty() && !key.contains(' ') {
                metadata.push((key.to_string(), v.trim().to_string()));
            }
        }
    }

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut errors = Vec::new();
    match reader.headers().cloned() {
        Ok(h) => {
            let got: Vec<&str> = h.iter().collect();
            if got != ["wavelength_nm", column] {
                let line = h.position().map(|p| p.line() as usize).unwrap_or(1);
                errors.push(
                    Diagnostic::error(
                        "bad-header",
                        format!("expected header `wavelength_nm,{column}`, found `{}`", got.join(",")),
                    )
                    .at_line(line),
                );
                return Err(errors);
            }
        }
        Err(e) => return Err(vec![Diagnostic::error("parse-error", e.to_string())]),
    }

    let mut wavelengths: Vec<f64> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();
    for record in reader.records() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line() as usize);
                let mut d = Diagnostic::error("parse-error", e.to_string());
                d.line = line;
                errors.push(d);
                continue;
            }
        };
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() != 2 {
            errors.push(
                Diagnostic::error("parse-error", format!("expected 2 fields, found {}", record.len())).at_line(line),
            );
            continue;
        }
        let parse = |s: &str| s.parse::<f64>().ok().filter(|v| v.is_finite());
        let (Some(w), Some(v)) = (parse(&record[0]), parse(&record[1])) else {
            errors.push(
                Diagnostic::error("parse-error", format!("cannot parse `{},{}`", &record[0], &record[1])).at_line(line),
            );
            continue;
        };
        if !(MIN_WAVELENGTH_NM..=MAX_WAVELENGTH_NM).contains(&w) {
            errors.push(
                Diagnostic::error("wavelength-out-of-range", format!("{w} nm outside [300, 1100] nm")).at_line(line),
            );
        }
        if let Some(&prev) = wavelengths.last() {
            if w <= prev {
                errors.push(
                    Diagnostic::error(
                        "non-monotonic-grid",
                        format!("wavelength {w} nm does not increase after {prev} nm"),
                    )
                    .at_line(line),
                );
            }
        }
        if v < 0.0 {
            errors.push(Diagnostic::error("negative-value", format!("{column} {v} is negative")).at_line(line));
        } else if kind.role() == UnitRole::Dimensionless && v > 1.0 {
            errors.push(Diagnostic::error(kind.range_code(), format!("{column} {v} outside [0, 1]")).at_line(line));
        }
        wavelengths.push(w);
        values.push(v);
        lines.push(line);
    }

    if errors.is_empty() && wavelengths.len() < 2 {
        errors.push(Diagnostic::error(
            "too-few-points",
            format!("{} data rows; at least 2 are required", wavelengths.len()),
        ));
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut notes = Vec::new();
    let steps: Vec<f64> = wavelengths.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sorted = steps.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    for (i, step) in steps.iter().enumerate() {
        if *step > 2.0 * median {
            notes.push(
                Diagnostic::warning(
                    "interpolated-gap",
                    format!(
                        "{step} nm gap between {} and {} nm is bridged by linear interpolation",
                        wavelengths[i],
                        wavelengths[i + 1]
                    ),
                )
                .at_line(lines[i + 1]),
            );
        }
    }

    let grid = WavelengthGrid::new(wavelengths).map_err(|e| vec![Diagnostic::error("invalid-grid", e.to_string())])?;
    let spectrum = Spectrum::new(grid, values, kind.role())
        .map_err(|e| vec![Diagnostic::error("invalid-spectrum", e.to_string())])?;
    Ok((CsvProfile { spectrum, metadata }, notes))
}

fn toml_line(raw: &str, span: Option<std::ops::Range<usize>>) -> Option<usize> {
    span.map(|s| raw[..s.start.min(raw.len())].matches('\n').count() + 1)
}

fn provenance_from_comments(text: &str) -> Option<String> {
    text.lines().find_map(|l| {
        l.trim_start()
            .strip_prefix('#')
            .and_then(|c| c.trim_start().strip_prefix("provenance:"))
            .map(|v| v.trim().to_string())
    })
}

/// Full invariant check of one profile. `qe_lookup` resolves the QE CSV a
/// sensor profile refers to.
pub fn validate_profile(
    kind: ProfileKind,
    raw: &[u8],
    qe_lookup: &dyn Fn(&str) -> Option<Spectrum>,
) -> Result<ValidatedProfile, Vec<Diagnostic>> {
    if kind == ProfileKind::Sensor {
        return validate_sensor(raw, qe_lookup);
    }
    let (csv, mut notes) = parse_spectrum_csv(kind, raw)?;
    let provenance = csv.meta("provenance").map(str::to_string);
    let spectrum = csv.spectrum.clone();
    let profile = match kind {
        ProfileKind::Water => Profile::Water(
            WaterProfile::new("", spectrum).map_err(|e| vec![Diagnostic::error("invalid-spectrum", e.to_string())])?,
        ),
        ProfileKind::Light => {
            let area = spectrum.integrate();
            if !(area > 0.0) {
                return Err(vec![Diagnostic::error(
                    "empty-spectrum",
                    "light spectrum integrates to zero",
                )]);
            }
            let factor = 1.0 / area;
            let light_kind = match csv.meta("light-kind") {
                None => LightKind::Custom,
                Some(k) => match serde_json::from_value(serde_json::Value::String(k.to_string())) {
                    Ok(kind) => kind,
                    Err(_) => {
                        notes.push(Diagnostic::warning(
                            "unknown-light-kind",
                            format!("light-kind `{k}` not recognized; treated as custom"),
                        ));
                        LightKind::Custom
                    }
                },
            };
            notes.push(Diagnostic::info(
                "normalized",
                format!("spectrum integral {area} rescaled to 1 (factor {factor})"),
            ));
            Profile::Light {
                spectrum: spectrum
                    .scale(factor, UnitRole::RelativePower)
                    .map_err(|e| vec![Diagnostic::error("invalid-spectrum", e.to_string())])?,
                kind: light_kind,
                normalization_factor: factor,
            }
        }
        ProfileKind::Material => Profile::Material(
            SurfaceMaterial::new("", spectrum)
                .map_err(|e| vec![Diagnostic::error("invalid-spectrum", e.to_string())])?,
        ),
        ProfileKind::Lens => Profile::Lens(spectrum),
        ProfileKind::Qe => Profile::Qe(spectrum),
        ProfileKind::Sensor => unreachable!(),
    };
    Ok(ValidatedProfile {
        kind,
        profile,
        raw: RawProfile::Csv(csv),
        provenance,
        diagnostics: notes,
    })
}

fn validate_sensor(
    raw: &[u8],
    qe_lookup: &dyn Fn(&str) -> Option<Spectrum>,
) -> Result<ValidatedProfile, Vec<Diagnostic>> {
    let text =
        std::str::from_utf8(raw).map_err(|e| vec![Diagnostic::error("parse-error", format!("not UTF-8: {e}"))])?;
    let doc: SensorProfileDoc = toml::from_str(text).map_err(|e| {
        let mut d = Diagnostic::error("invalid-profile", e.message().to_string());
        d.line = toml_line(text, e.span());
        vec![d]
    })?;
    let Some(qe) = qe_lookup(&doc.qe_csv) else {
        return Err(vec![Diagnostic::error(
            "missing-qe",
            format!("QE curve `{}` not found", doc.qe_csv),
        )
        .for_field("qe_csv")]);
    };
    let model = doc
        .build(qe)
        .map_err(|e| vec![Diagnostic::error("invalid-field", e.to_string())])?;
    Ok(ValidatedProfile {
        kind: ProfileKind::Sensor,
        profile: Profile::Sensor(model),
        provenance: provenance_from_comments(text),
        raw: RawProfile::Sensor(doc),
        diagnostics: Vec::new(),
    })
}

/// Writes a profile back in its on-disk format.
pub fn serialize_profile(kind: ProfileKind, raw: &RawProfile) -> String {
    match raw {
        RawProfile::Csv(csv) => {
            let mut out = String::new();
            for (k, v) in &csv.metadata {
                out.push_str(&format!("# {k}: {v}\n"));
            }
            out.push_str(&format!("wavelength_nm,{}\n", kind.value_column().unwrap_or("value")));
            for (w, v) in csv.spectrum.wavelengths().iter().zip(csv.spectrum.values()) {
                out.push_str(&format!("{w},{v}\n"));
            }
            out
        }
        RawProfile::Sensor(doc) => toml::to_string(doc).expect("sensor profile serializes"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    /// File name inside the data directory.
    pub source: String,
    pub validated: ValidatedProfile,
}

/// Validated presets keyed by (kind, name). Immutable once loaded.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Catalog {
    entries: BTreeMap<(ProfileKind, String), CatalogEntry>,
    diagnostics: Vec<Diagnostic>,
}

fn split_file_name(file: &str) -> Option<(&str, &str, &str)> {
    let (stem, ext) = file.rsplit_once('.')?;
    let (kind, name) = stem.split_once('.')?;
    Some((kind, name, ext))
}

/// Loads every recognized profile in `dir`. Malformed files are reported in
/// [`Catalog::diagnostics`] and left out; the rest of the catalog still loads.
pub fn load_catalog(dir: &Path) -> Result<Catalog, PresetError> {
    let unreadable = |source| PresetError::Unreadable {
        path: dir.to_path_buf(),
        source,
    };
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(unreadable)? {
        let entry = entry.map_err(unreadable)?;
        if !entry.file_type().map(|t| t.is_file()).unwrap_or(false) {
            continue;
        }
        files.push((entry.file_name().to_string_lossy().into_owned(), entry.path()));
    }
    files.sort();

    let mut catalog = Catalog::default();
    let mut pending_sensors = Vec::new();
    for (file, path) in files {
        let Some((kind_str, name, ext)) = split_file_name(&file) else {
            catalog
                .diagnostics
                .push(Diagnostic::warning("unknown-extension", "not a profile file; skipped").in_source(&file));
            continue;
        };
        let Some(kind) = ProfileKind::parse(kind_str) else {
            catalog.diagnostics.push(
                Diagnostic::warning("unknown-kind", format!("unknown profile kind `{kind_str}`; skipped"))
                    .in_source(&file),
            );
            continue;
        };
        if ext != kind.extension() {
            catalog.diagnostics.push(
                Diagnostic::warning(
                    "unknown-extension",
                    format!("expected `.{}` for {kind} profiles; skipped", kind.extension()),
                )
                .in_source(&file),
            );
            continue;
        }
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) => {
                catalog
                    .diagnostics
                    .push(Diagnostic::error("io-error", e.to_string()).in_source(&file));
                continue;
            }
        };
        if kind == ProfileKind::Sensor {
            pending_sensors.push((file.clone(), name.to_string(), bytes));
            continue;
        }
        catalog.ingest(kind, name, &file, &bytes);
    }

    // Sensors refer to QE curves by file name, so they load last.
    for (file, name, bytes) in pending_sensors {
        catalog.ingest(ProfileKind::Sensor, &name, &file, &bytes);
    }
    Ok(catalog)
}

impl Catalog {
    fn ingest(&mut self, kind: ProfileKind, name: &str, file: &str, bytes: &[u8]) {
        let lookup = |qe_file: &str| self.qe_by_source(qe_file);
        match validate_profile(kind, bytes, &lookup) {
            Ok(mut validated) => {
                rename_profile(&mut validated.profile, name);
                for d in &validated.diagnostics {
                    self.diagnostics.push(d.clone().in_source(file));
                }
                self.entries.insert(
                    (kind, name.to_string()),
                    CatalogEntry {
                        name: name.to_string(),
                        source: file.to_string(),
                        validated,
                    },
                );
            }
            Err(diags) => {
                self.diagnostics.extend(diags.into_iter().map(|d| d.in_source(file)));
            }
        }
    }

    fn qe_by_source(&self, file: &str) -> Option<Spectrum> {
        self.entries.values().find_map(|e| match &e.validated.profile {
            Profile::Qe(s) if e.source == file => Some(s.clone()),
            _ => None,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        &self.diagnostics
    }

    pub fn has_errors(&self) -> bool {
        has_errors(&self.diagnostics)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn names(&self, kind: ProfileKind) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|((k, _), _)| *k == kind)
            .map(|((_, n), _)| n.as_str())
            .collect()
    }

    pub fn get(&self, kind: ProfileKind, name: &str) -> Option<&CatalogEntry> {
        self.entries.get(&(kind, name.to_string()))
    }

    pub fn water(&self, name: &str) -> Option<&WaterProfile> {
        match &self.get(ProfileKind::Water, name)?.validated.profile {
            Profile::Water(w) => Some(w),
            _ => None,
        }
    }

    /// Normalized light shape and its kind.
    pub fn light(&self, name: &str) -> Option<(&Spectrum, LightKind)> {
        match &self.get(ProfileKind::Light, name)?.validated.profile {
            Profile::Light { spectrum, kind, .. } => Some((spectrum, *kind)),
            _ => None,
        }
    }

    pub fn material(&self, name: &str) -> Option<&SurfaceMaterial> {
        match &self.get(ProfileKind::Material, name)?.validated.profile {
            Profile::Material(m) => Some(m),
            _ => None,
        }
    }

    pub fn lens_transmission(&self, name: &str) -> Option<&Spectrum> {
        match &self.get(ProfileKind::Lens, name)?.validated.profile {
            Profile::Lens(t) => Some(t),
            _ => None,
        }
    }

    pub fn qe(&self, name: &str) -> Option<&Spectrum> {
        match &self.get(ProfileKind::Qe, name)?.validated.profile {
            Profile::Qe(q) => Some(q),
            _ => None,
        }
    }

    /// QE curve addressed the way sensor profiles do: by file name.
    pub fn qe_file(&self, file: &str) -> Option<Spectrum> {
        self.qe_by_source(file)
    }

    pub fn sensor(&self, name: &str) -> Option<&SensorModel> {
        match &self.get(ProfileKind::Sensor, name)?.validated.profile {
            Profile::Sensor(s) => Some(s),
            _ => None,
        }
    }

    /// Summary rows for listings.
    pub fn listing(&self) -> Vec<PresetSummary> {
        self.entries
            .values()
            .map(|e| PresetSummary {
                kind: e.validated.kind,
                name: e.name.clone(),
                source: e.source.clone(),
                provenance: e.validated.provenance.clone(),
                label: match &e.validated.profile {
                    Profile::Sensor(s) => Some(s.name.clone()),
                    _ => None,
                },
            })
            .collect()
    }
}

fn rename_profile(profile: &mut Profile, name: &str) {
    match profile {
        Profile::Water(w) => w.name = name.to_string(),
        Profile::Material(m) => m.name = name.to_string(),
        _ => {}
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresetSummary {
    pub kind: ProfileKind,
    pub name: String,
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_qe(_: &str) -> Option<Spectrum> {
        None
    }

    #[test]
    fn descending_grid_rejected_at_line() {
        let raw = b"# provenance: test\nwavelength_nm,b_per_m\n400,0.1\n500,0.2\n450,0.3\n";
        let err = validate_profile(ProfileKind::Water, raw, &no_qe).unwrap_err();
        assert_eq!(err.len(), 1);
        assert_eq!(err[0].code, "non-monotonic-grid");
        assert_eq!(err[0].line, Some(5));
    }

    #[test]
    fn qe_out_of_range() {
        let raw = b"wavelength_nm,qe\n400,0.5\n500,1.2\n";
        let err = validate_profile(ProfileKind::Qe, raw, &no_qe).unwrap_err();
        assert_eq!(err[0].code, "qe-out-of-range");
        assert_eq!(err[0].line, Some(3));
    }

    #[test]
    fn light_normalization_recorded() {
        let raw = b"wavelength_nm,relative_power\n400,0.01\n600,0.01\n";
        let v = validate_profile(ProfileKind::Light, raw, &no_qe).unwrap();
        let Profile::Light {
            spectrum,
            normalization_factor,
            kind,
        } = &v.profile
        else {
            panic!("not a light");
        };
        assert_eq!(*normalization_factor, 0.5);
        assert_eq!(*kind, LightKind::Custom);
        assert!((spectrum.integrate() - 1.0).abs() < 1e-12);
        assert!(v.diagnostics.iter().any(|d| d.code == "normalized"));
    }

    #[test]
    fn gap_warning() {
        let raw = b"wavelength_nm,b_per_m\n400,0.1\n410,0.1\n420,0.1\n480,0.1\n490,0.1\n500,0.1\n";
        let v = validate_profile(ProfileKind::Water, raw, &no_qe).unwrap();
        let gaps: Vec<_> = v.diagnostics.iter().filter(|d| d.code == "interpolated-gap").collect();
        assert_eq!(gaps.len(), 1);
        assert_eq!(gaps[0].line, Some(5));
    }

    #[test]
    fn header_and_parse_errors() {
        let err = validate_profile(ProfileKind::Water, b"wavelength,b\n400,1\n", &no_qe).unwrap_err();
        assert_eq!(err[0].code, "bad-header");
        let err = validate_profile(ProfileKind::Water, b"wavelength_nm,b_per_m\n400,x\n500,1\n", &no_qe).unwrap_err();
        assert_eq!(err[0].code, "parse-error");
        assert_eq!(err[0].line, Some(2));
        let err = validate_profile(ProfileKind::Water, b"wavelength_nm,b_per_m\n400,1\n", &no_qe).unwrap_err();
        assert_eq!(err[0].code, "too-few-points");
        let err = validate_profile(ProfileKind::Water, b"wavelength_nm,b_per_m\n200,1\n500,1\n", &no_qe).unwrap_err();
        assert_eq!(err[0].code, "wavelength-out-of-range");
        let err = validate_profile(ProfileKind::Water, b"\xff\xfe", &no_qe).unwrap_err();
        assert_eq!(err[0].code, "parse-error");
    }

    #[test]
    fn sensor_profile_requires_every_field() {
        let raw = b"name = \"x\"\npixel_area_m2 = 1e-11\n";
        let err = validate_profile(ProfileKind::Sensor, raw, &no_qe).unwrap_err();
        assert_eq!(err[0].code, "invalid-profile");
        assert!(err[0].message.contains("missing field"), "{}", err[0].message);
    }

    #[test]
    fn sensor_profile_missing_qe() {
        let raw = br#"
name = "x"
pixel_area_m2 = 1e-11
resolution_x = 10
resolution_y = 10
sensor_size_x_mm = 1.0
sensor_size_y_mm = 1.0
qe_csv = "qe.none.csv"
system_gain_dn_per_e = 0.1
dark_signal_dn = 1.0
dark_noise_var_e2 = 4.0
bit_depth = 12
monochrome = true
"#;
        let err = validate_profile(ProfileKind::Sensor, raw, &no_qe).unwrap_err();
        assert_eq!(err[0].code, "missing-qe");
    }

    #[test]
    fn empty_directory_is_empty_catalog() {
        let dir = tempfile::tempdir().unwrap();
        let cat = load_catalog(dir.path()).unwrap();
        assert!(cat.is_empty());
        assert!(cat.diagnostics().is_empty());
    }

    #[test]
    fn unreadable_directory_errors() {
        assert!(load_catalog(Path::new("/definitely/not/here")).is_err());
    }

    #[test]
    fn partial_catalog_with_diagnostics() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(
            dir.path().join("water.good.csv"),
            "wavelength_nm,b_per_m\n400,0.1\n500,0.2\n",
        )
        .unwrap();
        std::fs::write(
            dir.path().join("water.bad.csv"),
            "wavelength_nm,b_per_m\n500,0.1\n400,0.2\n",
        )
        .unwrap();
        std::fs::write(dir.path().join("README.md"), "notes").unwrap();
        std::fs::write(dir.path().join("water.other.txt"), "x").unwrap();
        let cat = load_catalog(dir.path()).unwrap();
        assert_eq!(cat.names(ProfileKind::Water), vec!["good"]);
        assert_eq!(cat.water("good").unwrap().name, "good");
        let codes: Vec<_> = cat.diagnostics().iter().map(|d| d.code.as_str()).collect();
        assert!(codes.contains(&"non-monotonic-grid"));
        assert_eq!(codes.iter().filter(|c| **c == "unknown-extension").count(), 2);
        let bad = cat
            .diagnostics()
            .iter()
            .find(|d| d.code == "non-monotonic-grid")
            .unwrap();
        assert_eq!(bad.source.as_deref(), Some("water.bad.csv"));
        assert_eq!(bad.line, Some(3));
    }
}
