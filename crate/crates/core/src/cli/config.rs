//! Flat `key = value` run configuration with dotted keys.
//!
//! Lines starting with `#` and blank lines are ignored. Complex numbers are
//! written `a+bi`. [`RunConfig::to_canonical`] emits every key, sorted, with
//! defaults filled in; parsing the canonical text reproduces it exactly.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use sha2::{Digest, Sha256};

use crate::spectra::{CompareMode, GeneratorSource};
use crate::symbols::{AnalyticSymbol, SymbolFamily};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Cluster,
    Expand,
    Spectrum,
    Compare,
    Selftest,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Cluster => "cluster",
            Mode::Expand => "expand",
            Mode::Spectrum => "spectrum",
            Mode::Compare => "compare",
            Mode::Selftest => "selftest",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cluster" => Mode::Cluster,
            "expand" => Mode::Expand,
            "spectrum" => Mode::Spectrum,
            "compare" => Mode::Compare,
            "selftest" => Mode::Selftest,
            _ => return Err(Error::Config(format!("unknown mode `{s}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolConfig {
    pub family: SymbolFamily,
    pub eps_lower: Option<f64>,
}

impl SymbolConfig {
    /// Builds the symbol. An explicit `eps_lower` is taken as claimed;
    /// otherwise the bound implied by the parameters is used.
    pub fn build(&self) -> Result<AnalyticSymbol> {
        match self.eps_lower {
            Some(eps) => AnalyticSymbol::new(self.family.clone(), eps),
            None => AnalyticSymbol::with_provable_bound(self.family.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumConfig {
    pub mode: CompareMode,
    pub resolution: f64,
    pub refine: bool,
    pub thinning_cell: f64,
    pub source: Option<GeneratorSource>,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        Self {
            mode: CompareMode::Equality,
            resolution: 0.01,
            refine: false,
            thinning_cell: 0.02,
            source: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub symbol: Option<SymbolConfig>,
    pub n_points: usize,
    pub spatial_halfwidth: f64,
    pub tol: f64,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
    pub seed: u64,
    pub spectrum: SpectrumConfig,
    pub n_test_vectors: usize,
    pub export_csv: bool,
    pub criteria: Vec<u8>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Selftest,
            symbol: None,
            n_points: 2048,
            spatial_halfwidth: 200.0,
            tol: 1e-6,
            output_dir: PathBuf::from("out"),
            emit_svg: false,
            seed: 42,
            spectrum: SpectrumConfig::default(),
            n_test_vectors: 16,
            export_csv: false,
            criteria: crate::acceptance::ALL.to_vec(),
        }
    }
}

struct Entries {
    map: BTreeMap<String, String>,
}

impl Entries {
    fn take(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn parse<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.take(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::Config(format!("{key} = {v}: {e}"))),
        }
    }

    fn required<T: FromStr>(&mut self, key: &str) -> Result<T>
    where
        T::Err: Display,
    {
        self.parse(key)?
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    fn complex(&mut self, key: &str) -> Result<Complex64> {
        let v = self.take(key).ok_or_else(|| Error::Config(format!("missing key `{key}`")))?;
        parse_complex(&v).map_err(|e| Error::Config(format!("{key} = {v}: {e}")))
    }

    fn boolean(&mut self, key: &str) -> Result<Option<bool>> {
        match self.take(key).as_deref() {
            None => Ok(None),
            Some("true") => Ok(Some(true)),
            Some("false") => Ok(Some(false)),
            Some(v) => Err(Error::Config(format!("{key} = {v}: expected true or false"))),
        }
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    Complex64::from_str(&compact).map_err(|e| format!("not a complex number ({e})"))
}

fn fmt_complex(z: Complex64) -> String {
    z.to_string()
}

fn parse_symbol(e: &mut Entries, prefix: &str) -> Result<SymbolConfig> {
    let key = |k: &str| format!("{prefix}.{k}");
    let family_name: String = e.required(&key("family"))?;
    let eps_lower: Option<f64> = e.parse(&key("eps_lower"))?;
    let family = match family_name.as_str() {
        "constant" => SymbolFamily::Constant {
            value: e.complex(&key("value"))?,
        },
        "moebius_decay" => SymbolFamily::MoebiusDecay {
            limit: e.complex(&key("limit"))?,
            residue: e.complex(&key("residue"))?,
            pole: e.complex(&key("pole"))?,
        },
        "log_oscillation" => SymbolFamily::LogOscillation {
            center: e.complex(&key("center"))?,
            amplitude: e.complex(&key("amplitude"))?,
            frequency: e.parse(&key("frequency"))?.unwrap_or(1.0),
        },
        "disc_transfer" => {
            let raw: String = e.required(&key("coeffs"))?;
            let coeffs = raw
                .split(',')
                .map(|s| parse_complex(s.trim()))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|m| Error::Config(format!("{}: {m}", key("coeffs"))))?;
            SymbolFamily::DiscTransfer { coeffs }
        }
        "sum" => {
            let term_prefix = key("term.");
            let mut indices: Vec<usize> = e
                .map
                .keys()
                .filter_map(|k| k.strip_prefix(&term_prefix))
                .filter_map(|rest| rest.split('.').next())
                .map(|i| {
                    i.parse::<usize>()
                        .map_err(|_| Error::Config(format!("bad term index `{i}` under {term_prefix}")))
                })
                .collect::<Result<_>>()?;
            indices.sort_unstable();
            indices.dedup();
            if indices.is_empty() {
                return Err(Error::Config(format!("sum symbol `{prefix}` has no terms")));
            }
            let mut terms = Vec::with_capacity(indices.len());
            for i in indices {
                terms.push(parse_symbol(e, &format!("{term_prefix}{i}"))?.build()?);
            }
            SymbolFamily::Sum { terms }
        }
        other => return Err(Error::Config(format!("unknown symbol family `{other}`"))),
    };
    if let Some(eps) = eps_lower {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Config(format!("{} = {eps} must be positive", key("eps_lower"))));
        }
    }
    Ok(SymbolConfig { family, eps_lower })
}

fn emit_symbol(out: &mut BTreeMap<String, String>, prefix: &str, family: &SymbolFamily, eps: Option<f64>) {
    let mut put = |k: &str, v: String| {
        out.insert(format!("{prefix}.{k}"), v);
    };
    if let Some(eps) = eps {
        put("eps_lower", eps.to_string());
    }
    match family {
        SymbolFamily::Constant { value } => {
            put("family", "constant".into());
            put("value", fmt_complex(*value));
        }
        SymbolFamily::MoebiusDecay { limit, residue, pole } => {
            put("family", "moebius_decay".into());
            put("limit", fmt_complex(*limit));
            put("residue", fmt_complex(*residue));
            put("pole", fmt_complex(*pole));
        }
        SymbolFamily::LogOscillation { center, amplitude, frequency } => {
            put("family", "log_oscillation".into());
            put("center", fmt_complex(*center));
            put("amplitude", fmt_complex(*amplitude));
            put("frequency", frequency.to_string());
        }
        SymbolFamily::DiscTransfer { coeffs } => {
            put("family", "disc_transfer".into());
            put("coeffs", coeffs.iter().map(|c| fmt_complex(*c)).collect::<Vec<_>>().join(", "));
        }
        SymbolFamily::Sum { terms } => {
            put("family", "sum".into());
            for (i, t) in terms.iter().enumerate() {
                emit_symbol(out, &format!("{prefix}.term.{i}"), t.family(), Some(t.eps_lower()));
            }
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if k.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", lineno + 1)));
            }
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key `{k}`", lineno + 1)));
            }
        }
        let mut e = Entries { map };
        let d = RunConfig::default();
        let mode = e.parse::<String>("mode")?.map(|m| m.parse()).transpose()?.unwrap_or(d.mode);
        let symbol = if e.map.contains_key("symbol.family") {
            Some(parse_symbol(&mut e, "symbol")?)
        } else {
            None
        };
        let spectrum_mode = match e.take("spectrum.mode").as_deref() {
            None | Some("equality") => CompareMode::Equality,
            Some("containment") => CompareMode::Containment,
            Some(v) => return Err(Error::Config(format!("spectrum.mode = {v}: expected equality or containment"))),
        };
        let source = match e.take("spectrum.source").as_deref() {
            None | Some("auto") => None,
            Some("cluster_set") => Some(GeneratorSource::ClusterSet),
            Some("essential_range") => Some(GeneratorSource::EssentialRange),
            Some(v) => {
                return Err(Error::Config(format!(
                    "spectrum.source = {v}: expected auto, cluster_set or essential_range"
                )))
            }
        };
        let criteria = match e.take("selftest.criteria") {
            None => d.criteria.clone(),
            Some(v) => v
                .split(',')
                .map(|s| s.trim().parse::<u8>().map_err(|_| Error::Config(format!("selftest.criteria: bad id `{s}`"))))
                .collect::<Result<Vec<_>>>()?,
        };
        let cfg = RunConfig {
            mode,
            symbol,
            n_points: e.parse("grid.n_points")?.unwrap_or(d.n_points),
            spatial_halfwidth: e.parse("grid.spatial_halfwidth")?.unwrap_or(d.spatial_halfwidth),
            tol: e.parse("tol")?.unwrap_or(d.tol),
            output_dir: e.parse::<String>("output_dir")?.map(PathBuf::from).unwrap_or(d.output_dir),
            emit_svg: e.boolean("emit_svg")?.unwrap_or(d.emit_svg),
            seed: e.parse("seed")?.unwrap_or(d.seed),
            spectrum: SpectrumConfig {
                mode: spectrum_mode,
                resolution: e.parse("spectrum.resolution")?.unwrap_or(d.spectrum.resolution),
                refine: e.boolean("spectrum.refine")?.unwrap_or(d.spectrum.refine),
                thinning_cell: e.parse("spectrum.thinning_cell")?.unwrap_or(d.spectrum.thinning_cell),
                source,
            },
            n_test_vectors: e.parse("compare.n_test_vectors")?.unwrap_or(d.n_test_vectors),
            export_csv: e.boolean("expand.export_csv")?.unwrap_or(d.export_csv),
            criteria,
        };
        if let Some(k) = e.map.keys().next() {
            return Err(Error::Config(format!("unknown key `{k}`")));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.n_points.is_power_of_two() && (256..=8192).contains(&self.n_points)) {
            return bad(format!("grid.n_points = {} must be a power of two in [256, 8192]", self.n_points));
        }
        if !(self.spatial_halfwidth > 0.0 && self.spatial_halfwidth.is_finite()) {
            return bad(format!("grid.spatial_halfwidth = {} must be positive", self.spatial_halfwidth));
        }
        if !(self.tol > 0.0 && self.tol <= 0.1) {
            return bad(format!("tol = {} must lie in (0, 0.1]", self.tol));
        }
        if !(self.spectrum.resolution > 0.0 && self.spectrum.resolution < 1.0) {
            return bad(format!("spectrum.resolution = {} must lie in (0, 1)", self.spectrum.resolution));
        }
        if !(self.spectrum.thinning_cell >= 0.0 && self.spectrum.thinning_cell.is_finite()) {
            return bad(format!("spectrum.thinning_cell = {} must be nonnegative", self.spectrum.thinning_cell));
        }
        if self.n_test_vectors == 0 {
            return bad("compare.n_test_vectors must be positive".into());
        }
        if let Some(id) = self.criteria.iter().find(|id| !crate::acceptance::ALL.contains(id)) {
            return bad(format!("selftest.criteria: unknown criterion {id}"));
        }
        if self.mode != Mode::Selftest && self.symbol.is_none() {
            return bad(format!("mode {} needs symbol.family", self.mode.name()));
        }
        Ok(())
    }

    /// Every key, sorted, one `key = value` per line.
    pub fn to_canonical(&self) -> String {
        let mut m = BTreeMap::new();
        m.insert("mode".to_string(), self.mode.name().to_string());
        if let Some(s) = &self.symbol {
            emit_symbol(&mut m, "symbol", &s.family, s.eps_lower);
        }
        m.insert("grid.n_points".into(), self.n_points.to_string());
        m.insert("grid.spatial_halfwidth".into(), self.spatial_halfwidth.to_string());
        m.insert("tol".into(), self.tol.to_string());
        m.insert("output_dir".into(), self.output_dir.display().to_string());
        m.insert("emit_svg".into(), self.emit_svg.to_string());
        m.insert("seed".into(), self.seed.to_string());
        m.insert(
            "spectrum.mode".into(),
            match self.spectrum.mode {
                CompareMode::Equality => "equality",
                CompareMode::Containment => "containment",
            }
            .into(),
        );
        m.insert("spectrum.resolution".into(), self.spectrum.resolution.to_string());
        m.insert("spectrum.refine".into(), self.spectrum.refine.to_string());
        m.insert("spectrum.thinning_cell".into(), self.spectrum.thinning_cell.to_string());
        m.insert(
            "spectrum.source".into(),
            match self.spectrum.source {
                None => "auto",
                Some(GeneratorSource::ClusterSet) => "cluster_set",
                Some(GeneratorSource::EssentialRange) => "essential_range",
            }
            .into(),
        );
        m.insert("compare.n_test_vectors".into(), self.n_test_vectors.to_string());
        m.insert("expand.export_csv".into(), self.export_csv.to_string());
        m.insert(
            "selftest.criteria".into(),
            self.criteria.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        );
        m.into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// SHA-256 of the canonical text, hex encoded.
    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_canonical().as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = "
# translation by i
mode = spectrum
symbol.family = constant
symbol.value = 0+1i
grid.n_points = 512
grid.spatial_halfwidth = 50
tol = 1e-6
";

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::parse(FULL).unwrap();
        assert_eq!(cfg.mode, Mode::Spectrum);
        assert_eq!(cfg.n_points, 512);
        assert_eq!(cfg.seed, 42);
        let canon = cfg.to_canonical();
        let again = RunConfig::parse(&canon).unwrap();
        assert_eq!(again, cfg);
        assert_eq!(again.to_canonical(), canon);
        assert_eq!(again.hash(), cfg.hash());
    }

    #[test]
    fn complex_syntax() {
        for (s, z) in [
            ("1+2i", Complex64::new(1.0, 2.0)),
            ("2i", Complex64::new(0.0, 2.0)),
            ("-0.5-1e-3i", Complex64::new(-0.5, -1e-3)),
            ("3", Complex64::new(3.0, 0.0)),
            ("1 + 1i", Complex64::new(1.0, 1.0)),
        ] {
            assert_eq!(parse_complex(s).unwrap(), z, "{s}");
            assert_eq!(parse_complex(&fmt_complex(z)).unwrap(), z);
        }
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn sum_symbols_round_trip() {
        let text = "mode = expand
symbol.family = sum
symbol.term.0.family = constant
symbol.term.0.value = 0.5+1i
symbol.term.1.family = moebius_decay
symbol.term.1.limit = 0+2i
symbol.term.1.residue = 1+0i
symbol.term.1.pole = 0-2i
";
        let cfg = RunConfig::parse(text).unwrap();
        let sym = cfg.symbol.as_ref().unwrap().build().unwrap();
        assert_eq!(sym.family_name(), "sum");
        let again = RunConfig::parse(&cfg.to_canonical()).unwrap();
        assert_eq!(again.to_canonical(), cfg.to_canonical());
    }

    #[test]
    fn validation_errors() {
        let cases = [
            "mode = spectrum\nsymbol.family = constant\nsymbol.value = 1i\nsymbol.eps_lower = 0\n",
            "mode = spectrum\nsymbol.family = constant\nsymbol.value = 1i\ngrid.n_points = 1000\n",
            "mode = spectrum\nsymbol.family = constant\nsymbol.value = 1i\ngrid.n_points = 16384\n",
            "mode = spectrum\nsymbol.family = constant\nsymbol.value = 1i\ntol = 0.5\n",
            "mode = spectrum\nsymbol.family = constant\nsymbol.value = 1i\nbogus = 1\n",
            "mode = spectrum\nsymbol.family = nope\n",
            "mode = spectrum\n",
            "mode = spectrum\nmode = expand\n",
            "no equals sign\n",
        ];
        for text in cases {
            match RunConfig::parse(text) {
                Err(e) => assert_eq!(e.exit_code(), 2, "{text}: {e}"),
                Ok(c) => panic!("{text} parsed to {c:?}"),
            }
        }
    }

    #[test]
    fn real_constant_is_a_hypothesis_failure() {
        let cfg = RunConfig::parse("mode = spectrum\nsymbol.family = constant\nsymbol.value = 1\n").unwrap();
        assert_eq!(cfg.symbol.unwrap().build().unwrap_err().exit_code(), 3);
    }
}
