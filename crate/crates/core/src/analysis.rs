//! End-to-end pipeline: diagram -> small roots -> automata -> growth report.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::automata::{build_geo, build_shortlex, Automaton};
use crate::config::AnalysisConfig;
use crate::diagram::{admissible_labelling, infinity_spanned, CoxeterDiagram, Labelling, ParsedDiagram, SpanningTree};
use crate::error::{Error, Result};
use crate::growth::{
    characteristic_polynomial, corroborate_perron, count_words, delta_report, growth_rate_enclosure,
    perron_certificate, rational_series, Corroboration, DeltaReport, Enclosure, PerronCertificate, TransferMatrix,
};
use crate::oracle::{bfs_group, GroupBall};
use crate::roots::{small_roots, SmallRootSet};

/// Diagram-level verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub rank: usize,
    pub geometric: bool,
    pub connected: bool,
    /// For geometric input: bold and dashed edges span a connected subgraph.
    pub bold_dashed_connected: Option<bool>,
    pub infinity_spanned: bool,
    /// 1-based tree edges.
    pub spanning_tree: Option<Vec<(usize, usize)>>,
    /// New 1-based label of each vertex.
    pub labelling: Option<Vec<usize>>,
    pub free_product: bool,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = format!("rank: {}\n", self.rank);
        s.push_str(&format!("connected: {}\n", yn(self.connected)));
        if let Some(b) = self.bold_dashed_connected {
            s.push_str(&format!("bold/dashed subgraph connected: {}\n", yn(b)));
        }
        s.push_str(&format!("infinity-spanned: {}\n", yn(self.infinity_spanned)));
        if let Some(t) = &self.spanning_tree {
            let e: Vec<String> = t.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            s.push_str(&format!("spanning tree: {}\n", e.join(" ")));
        }
        if let Some(l) = &self.labelling {
            let e: Vec<String> = l.iter().enumerate().map(|(v, k)| format!("{}->{}", v + 1, k)).collect();
            s.push_str(&format!("admissible labelling: {}\n", e.join(" ")));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

pub fn check(parsed: &ParsedDiagram) -> Result<CheckReport> {
    let d = parsed.to_coxeter();
    let tree = infinity_spanned(&d);
    let labelling = match &tree {
        Some(t) => Some(admissible_labelling(&d, t)?),
        None => None,
    };
    let mut warnings = Vec::new();
    let free_product = d.rank() >= 2 && d.is_free_product();
    if free_product {
        warnings.push("all labels are infinite: free product of order-2 groups, so g_k = w_k".into());
    }
    if !d.is_connected() {
        warnings.push("diagram is disconnected; growth analysis is not supported".into());
    }
    Ok(CheckReport {
        rank: d.rank(),
        geometric: matches!(parsed, ParsedDiagram::Geometric(_)),
        connected: d.is_connected(),
        bold_dashed_connected: match parsed {
            ParsedDiagram::Geometric(g) => Some(g.bold_dashed_connected()),
            ParsedDiagram::Coxeter(_) => None,
        },
        infinity_spanned: tree.is_some(),
        spanning_tree: tree
            .as_ref()
            .map(|t| t.edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect()),
        labelling: labelling.map(|l| l.labels().iter().map(|k| k + 1).collect()),
        free_product,
        warnings,
    })
}

/// Small roots and both automata of a connected diagram.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub diagram: CoxeterDiagram,
    pub tree: Option<SpanningTree>,
    pub labelling: Option<Labelling>,
    pub roots: SmallRootSet,
    pub geo: Automaton,
    pub shortlex: Automaton,
}

impl Pipeline {
    pub fn new(d: &CoxeterDiagram, cfg: &AnalysisConfig) -> Result<Self> {
        d.require_connected()?;
        let roots = small_roots(d, cfg.caps.degree, cfg.caps.sigma)?;
        let tree = infinity_spanned(d);
        let labelling = match &tree {
            Some(t) => Some(admissible_labelling(d, t)?),
            None => None,
        };
        let order: Vec<usize> = match &labelling {
            Some(l) => l.order().to_vec(),
            None => (0..d.rank()).collect(),
        };
        let (geo, shortlex) = std::thread::scope(|s| {
            let g = s.spawn(|| build_geo(&roots, cfg.caps.states));
            let sl = build_shortlex(&roots, &order, cfg.caps.states);
            (g.join().expect("geo construction thread"), sl)
        });
        Ok(Pipeline {
            diagram: d.clone(),
            tree,
            labelling,
            roots,
            geo: geo?,
            shortlex: shortlex?,
        })
    }

    pub fn order(&self) -> &[usize] {
        self.shortlex.order()
    }
}

/// Rational interval with decimal renderings.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    pub lo: String,
    pub hi: String,
    pub lo_decimal: String,
    pub hi_decimal: String,
    pub converged: bool,
}

impl IntervalReport {
    pub fn new(lo: &BigRational, hi: &BigRational, converged: bool) -> Self {
        IntervalReport {
            lo: lo.to_string(),
            hi: hi.to_string(),
            lo_decimal: decimal(lo, 15),
            hi_decimal: decimal(hi, 15),
            converged,
        }
    }

    fn from_enclosure(e: &Enclosure) -> Self {
        Self::new(&e.lo, &e.hi, e.converged)
    }
}

/// Truncated (towards minus infinity) decimal expansion with `places` digits.
fn decimal(x: &BigRational, places: usize) -> String {
    let scale = num_bigint::BigInt::from(10u32).pow(places as u32);
    let scaled = (x * BigRational::from(scale)).floor().to_integer();
    let neg = scaled < num_bigint::BigInt::zero();
    let digits = scaled.magnitude().to_string();
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    /// Coefficients, constant term first.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
    pub verified_terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomatonSummary {
    pub states: usize,
    pub core_dimension: usize,
    pub rate: IntervalReport,
    pub certificate: PerronCertificate,
    pub corroboration: Option<Corroboration>,
    pub series: Option<SeriesReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub depth: usize,
    pub w: Vec<String>,
    pub g: Vec<String>,
    pub w_agrees: bool,
    pub g_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldSummary {
    pub conductor: u64,
    pub degree: usize,
    pub minimal_polynomial: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub rank: usize,
    pub infinity_spanned: bool,
    pub free_product: bool,
    /// ShortLex generator order, 1-based, least first.
    pub generator_order: Vec<usize>,
    pub field: FieldSummary,
    pub small_roots: usize,
    pub k: usize,
    pub w: Vec<String>,
    pub g: Vec<String>,
    pub shortlex: AutomatonSummary,
    pub geo: AutomatonSummary,
    /// Word growth rate.
    pub omega: IntervalReport,
    /// Geodesic growth rate.
    pub gamma: IntervalReport,
    pub delta_enclosure: Option<IntervalReport>,
    pub delta: Option<DeltaReport>,
    pub oracle: Option<OracleComparison>,
    pub warnings: Vec<String>,
}

/// Exact counts and growth-rate data for one automaton.
pub struct AutomatonGrowth {
    pub counts: Vec<BigUint>,
    pub matrix: TransferMatrix,
    pub rate: Enclosure,
    pub certificate: PerronCertificate,
}

pub fn automaton_growth(a: &Automaton, cfg: &AnalysisConfig) -> Result<AutomatonGrowth> {
    let matrix = TransferMatrix::from_automaton(a);
    let rate = growth_rate_enclosure(&matrix, &cfg.tolerance(), cfg.caps.iterations)?;
    Ok(AutomatonGrowth {
        counts: count_words(a, cfg.k),
        certificate: perron_certificate(a),
        matrix,
        rate,
    })
}

fn summarize(a: &Automaton, gr: &AutomatonGrowth, cfg: &AnalysisConfig, warnings: &mut Vec<String>) -> AutomatonSummary {
    let mut corroboration = None;
    let mut series = None;
    if cfg.corroborate {
        match characteristic_polynomial(&gr.matrix, cfg.caps.charpoly) {
            Ok(p) => corroboration = Some(corroborate_perron(&p, &gr.rate)),
            Err(e) => warnings.push(format!("{} corroboration skipped: {e}", a.kind())),
        }
        match rational_series(a, cfg.caps.charpoly) {
            Ok(s) => {
                series = Some(SeriesReport {
                    numerator: s.numerator.coeffs().iter().map(|c| c.to_string()).collect(),
                    denominator: s.denominator.coeffs().iter().map(|c| c.to_string()).collect(),
                    verified_terms: s.verified_terms,
                })
            }
            Err(e) => warnings.push(format!("{} growth series skipped: {e}", a.kind())),
        }
    }
    if !gr.rate.converged {
        warnings.push(format!("{} rate enclosure did not reach the tolerance", a.kind()));
    }
    AutomatonSummary {
        states: a.state_count(),
        core_dimension: gr.matrix.dim(),
        rate: IntervalReport::from_enclosure(&gr.rate),
        certificate: gr.certificate.clone(),
        corroboration,
        series,
    }
}

/// Compares automaton counts against brute-force enumeration.
pub fn compare_with_oracle(p: &Pipeline, ball: &GroupBall) -> OracleComparison {
    let depth = ball.depth();
    let w_auto = count_words(&p.shortlex, depth);
    let g_auto = count_words(&p.geo, depth);
    let w = ball.element_counts();
    let g = ball.geodesic_counts();
    OracleComparison {
        depth,
        w_agrees: w == w_auto,
        g_agrees: g == g_auto,
        w: w.iter().map(|x| x.to_string()).collect(),
        g: g.iter().map(|x| x.to_string()).collect(),
    }
}

pub fn analyze(d: &CoxeterDiagram, cfg: &AnalysisConfig) -> Result<GrowthReport> {
    cfg.validate()?;
    let p = Pipeline::new(d, cfg)?;
    let (sl, geo) = std::thread::scope(|s| {
        let h = s.spawn(|| automaton_growth(&p.geo, cfg));
        let sl = automaton_growth(&p.shortlex, cfg);
        (sl, h.join().expect("geo growth thread"))
    });
    let (sl, geo) = (sl?, geo?);
    let mut warnings = Vec::new();
    let free_product = d.rank() >= 2 && d.is_free_product();

    let delta = if p.tree.is_some() {
        match delta_report(&sl.counts, &geo.counts, &sl.rate, &geo.rate, [&sl.certificate, &geo.certificate]) {
            Ok(r) => {
                if !free_product && !r.strict_domination {
                    warnings.push("geodesic growth rate not separated from word growth rate at this tolerance".into());
                }
                Some(r)
            }
            Err(e) => {
                warnings.push(format!("delta report skipped: {e}"));
                None
            }
        }
    } else {
        None
    };
    let delta_enclosure = if sl.rate.lo > BigRational::zero() {
        Some(IntervalReport::new(
            &(&geo.rate.lo / &sl.rate.hi),
            &(&geo.rate.hi / &sl.rate.lo),
            sl.rate.converged && geo.rate.converged,
        ))
    } else {
        None
    };

    let oracle = if cfg.oracle {
        let ball = bfs_group(d, cfg.oracle_depth, cfg.caps.degree, cfg.caps.elements)?;
        let cmp = compare_with_oracle(&p, &ball);
        if !cmp.w_agrees || !cmp.g_agrees {
            return Err(Error::Invariant("automaton counts disagree with the oracle".into()));
        }
        Some(cmp)
    } else {
        None
    };

    let f = p.roots.form().field();
    let shortlex = summarize(&p.shortlex, &sl, cfg, &mut warnings);
    let geo_summary = summarize(&p.geo, &geo, cfg, &mut warnings);
    Ok(GrowthReport {
        rank: d.rank(),
        infinity_spanned: p.tree.is_some(),
        free_product,
        generator_order: p.order().iter().map(|g| g + 1).collect(),
        field: FieldSummary {
            conductor: f.conductor(),
            degree: f.degree(),
            minimal_polynomial: f.minimal_polynomial().display_in("c"),
        },
        small_roots: p.roots.len(),
        k: cfg.k,
        w: sl.counts.iter().map(|x| x.to_string()).collect(),
        g: geo.counts.iter().map(|x| x.to_string()).collect(),
        omega: shortlex.rate.clone(),
        gamma: geo_summary.rate.clone(),
        shortlex,
        geo: geo_summary,
        delta_enclosure,
        delta,
        oracle,
        warnings,
    })
}

impl GrowthReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `k,w_k,g_k,r_k` rows; `r_k` is empty without a delta report.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,w_k,g_k,r_k\n");
        for k in 0..self.w.len() {
            let r = self
                .delta
                .as_ref()
                .map(|d| format!("{:.12}", d.ratios[k]))
                .unwrap_or_default();
            s.push_str(&format!("{k},{},{},{r}\n", self.w[k], self.g[k]));
        }
        s
    }

    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut s = String::new();
        s.push_str(&format!(
            "rank {}; infinity-spanned: {}; free product: {}\n",
            self.rank,
            yn(self.infinity_spanned),
            yn(self.free_product)
        ));
        if self.field.degree == 1 {
            s.push_str("field: rationals\n");
        } else {
            s.push_str(&format!(
                "field: c = 2cos(pi/{}), degree {}, minimal polynomial {}\n",
                self.field.conductor, self.field.degree, self.field.minimal_polynomial
            ));
        }
        let order: Vec<String> = self.generator_order.iter().map(|g| format!("s{g}")).collect();
        s.push_str(&format!("small roots: {}; shortlex order: {}\n", self.small_roots, order.join(" < ")));
        for (name, a) in [("ShortLex", &self.shortlex), ("Geo", &self.geo)] {
            s.push_str(&format!(
                "{name}: {} states; rate in [{}, {}]; {}\n",
                a.states,
                a.rate.lo_decimal,
                a.rate.hi_decimal,
                match &a.certificate.conclusion {
                    crate::growth::Conclusion::CertifiedPerron => "CertifiedPerron".to_string(),
                    crate::growth::Conclusion::NotCertified(r) => format!("NotCertified({r})"),
                }
            ));
            if let Some(c) = &a.corroboration {
                s.push_str(&format!(
                    "  corroboration: margin {:.3e} ({})\n",
                    c.margin,
                    if c.corroborated { "corroborated" } else { "not corroborated" }
                ));
            }
            if let Some(ser) = &a.series {
                s.push_str(&format!(
                    "  series: ({}) / ({})\n",
                    ser.numerator.join(", "),
                    ser.denominator.join(", ")
                ));
            }
        }
        s.push_str(&format!("omega in [{}, {}]\n", self.omega.lo_decimal, self.omega.hi_decimal));
        s.push_str(&format!("gamma in [{}, {}]\n", self.gamma.lo_decimal, self.gamma.hi_decimal));
        if let Some(d) = &self.delta {
            s.push_str(&format!(
                "delta ~ {:.12}; gamma_lo > omega_hi: {}; |r_K - 1| = {:.3e}\n",
                d.delta_hat,
                yn(d.strict_domination),
                d.trend
            ));
        }
        s.push_str("k\tw_k\tg_k");
        s.push_str(if self.delta.is_some() { "\tr_k\n" } else { "\n" });
        for k in 0..self.w.len() {
            s.push_str(&format!("{k}\t{}\t{}", self.w[k], self.g[k]));
            if let Some(d) = &self.delta {
                s.push_str(&format!("\t{:.9}", d.ratios[k]));
            }
            s.push('\n');
        }
        if let Some(o) = &self.oracle {
            s.push_str(&format!(
                "oracle (k <= {}): w {}, g {}\n",
                o.depth,
                if o.w_agrees { "agrees" } else { "DISAGREES" },
                if o.g_agrees { "agrees" } else { "DISAGREES" }
            ));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

/// Counts only: `w_k` from ShortLex, `g_k` from Geo.
#[derive(Debug, Clone, Serialize)]
pub struct CountsReport {
    pub k: usize,
    pub w: Vec<String>,
    pub g: Vec<String>,
}

pub fn counts(d: &CoxeterDiagram, cfg: &AnalysisConfig) -> Result<CountsReport> {
    let p = Pipeline::new(d, cfg)?;
    Ok(CountsReport {
        k: cfg.k,
        w: count_words(&p.shortlex, cfg.k).iter().map(|x| x.to_string()).collect(),
        g: count_words(&p.geo, cfg.k).iter().map(|x| x.to_string()).collect(),
    })
}

pub(crate) fn rows_csv(w: &[String], g: &[String]) -> String {
    let mut s = String::from("k,w_k,g_k\n");
    for k in 0..w.len() {
        s.push_str(&format!("{k},{},{}\n", w[k], g[k]));
    }
    s
}

pub(crate) fn rows_text(w: &[String], g: &[String]) -> String {
    let mut s = String::from("k\tw_k\tg_k\n");
    for k in 0..w.len() {
        s.push_str(&format!("{k}\t{}\t{}\n", w[k], g[k]));
    }
    s
}

impl CountsReport {
    pub fn to_csv(&self) -> String {
        rows_csv(&self.w, &self.g)
    }

    pub fn to_text(&self) -> String {
        rows_text(&self.w, &self.g)
    }
}

/// Oracle counts as a stand-alone report.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub elements: usize,
    pub w: Vec<String>,
    pub g: Vec<String>,
}

pub fn oracle_report(d: &CoxeterDiagram, depth: usize, cfg: &AnalysisConfig) -> Result<OracleReport> {
    d.require_connected()?;
    let ball = bfs_group(d, depth, cfg.caps.degree, cfg.caps.elements)?;
    Ok(OracleReport {
        depth,
        elements: ball.len(),
        w: ball.element_counts().iter().map(|x| x.to_string()).collect(),
        g: ball.geodesic_counts().iter().map(|x| x.to_string()).collect(),
    })
}

impl OracleReport {
    pub fn to_csv(&self) -> String {
        rows_csv(&self.w, &self.g)
    }

    pub fn to_text(&self) -> String {
        format!("{} elements of length <= {}\n", self.elements, self.depth) + &rows_text(&self.w, &self.g)
    }
}
