//! Scripts for Macaulay2 and Singular that recompute the invariants of a
//! ring, followed by comment lines carrying this engine's values.

use std::fmt::Write as _;

use clap::ValueEnum;
use depthforge_core::decomposition;
use depthforge_core::homology::{self, FieldSpec};
use depthforge_core::{MonomialIdeal, Result, RingContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    M2,
    Singular,
}

impl std::str::FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Target::from_str_name(s)
    }
}

impl Target {
    fn from_str_name(s: &str) -> std::result::Result<Self, String> {
        match s {
            "m2" => Ok(Target::M2),
            "singular" => Ok(Target::Singular),
            other => Err(format!("unknown export target `{other}` (expected m2 or singular)")),
        }
    }
}

/// What the engine computed, embedded as comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineValues {
    pub dimension: usize,
    pub depth: usize,
    pub projective_dimension: usize,
    pub ass: Vec<String>,
    pub betti_totals: Vec<u64>,
    pub hilbert: String,
}

impl EngineValues {
    pub fn compute(ctx: &RingContext, ideal: &MonomialIdeal, field: FieldSpec) -> Result<EngineValues> {
        let dec = decomposition::decompose(ideal)?;
        let betti = homology::betti_table(ideal, field)?;
        let names = ctx.var_names();
        Ok(EngineValues {
            dimension: dec.dimension,
            depth: betti.depth,
            projective_dimension: betti.projective_dimension,
            ass: dec.ass_primes.iter().map(|p| p.display_with(names).to_string()).collect(),
            betti_totals: betti.totals(),
            hilbert: homology::hilbert_series(ideal)?.to_string(),
        })
    }
}

fn generator_list(ctx: &RingContext, ideal: &MonomialIdeal) -> Vec<String> {
    ideal.generators().iter().map(|g| g.display_with(ctx.var_names()).to_string()).collect()
}

fn expected_block(out: &mut String, lead: &str, v: &EngineValues) {
    let totals: Vec<String> = v.betti_totals.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "{lead} expected (depthforge {}):", crate::report::ENGINE_VERSION);
    let _ = writeln!(out, "{lead} dim {}", v.dimension);
    let _ = writeln!(out, "{lead} depth {}", v.depth);
    let _ = writeln!(out, "{lead} pd {}", v.projective_dimension);
    let _ = writeln!(out, "{lead} ass {}", v.ass.join(" "));
    let _ = writeln!(out, "{lead} betti totals {}", totals.join(" "));
    let _ = writeln!(out, "{lead} hilbert {}", v.hilbert);
}

/// A self-contained script defining `S/I` over `field` and printing its
/// dimension, depth, associated primes and Betti numbers.
pub fn export_script(
    target: Target,
    label: &str,
    ctx: &RingContext,
    ideal: &MonomialIdeal,
    field: FieldSpec,
    values: &EngineValues,
) -> String {
    let gens = generator_list(ctx, ideal);
    let names = ctx.var_names().join(",");
    let p = field.characteristic();
    let mut out = String::new();
    match target {
        Target::M2 => {
            let coeffs = if p == 0 { "QQ".to_string() } else { format!("ZZ/{p}") };
            let _ = writeln!(out, "-- {label}: S/I, exported by depthforge");
            let _ = writeln!(out, "needsPackage \"Depth\";");
            let _ = writeln!(out, "S = {coeffs}[{names}];");
            if gens.is_empty() {
                let _ = writeln!(out, "I = ideal(0_S);");
            } else {
                let _ = writeln!(out, "I = ideal({});", gens.join(", "));
            }
            let _ = writeln!(out, "R = S/I;");
            let _ = writeln!(out, "print(\"dim \" | toString dim R);");
            let _ = writeln!(out, "print(\"depth \" | toString depth R);");
            let _ = writeln!(out, "print(\"ass \" | toString ass I);");
            let _ = writeln!(out, "print(betti res comodule I);");
            expected_block(&mut out, "--", values);
        }
        Target::Singular => {
            let _ = writeln!(out, "// {label}: S/I, exported by depthforge");
            let _ = writeln!(out, "LIB \"primdec.lib\";");
            let _ = writeln!(out, "LIB \"homolog.lib\";");
            if ctx.num_vars() == 0 {
                // Singular rings need a variable; k[u]/(u) is the field itself.
                let _ = writeln!(out, "ring S = {p},(u),dp;");
                let _ = writeln!(out, "ideal I = u;");
            } else {
                let _ = writeln!(out, "ring S = {p},({names}),dp;");
                if gens.is_empty() {
                    let _ = writeln!(out, "ideal I = 0;");
                } else {
                    let _ = writeln!(out, "ideal I = {};", gens.join(", "));
                }
            }
            let _ = writeln!(out, "print(\"dim \" + string(dim(std(I))));");
            let _ = writeln!(out, "print(\"depth \" + string(depth(module(I))));");
            let _ = writeln!(out, "list P = primdecGTZ(I);");
            let _ = writeln!(out, "int i;");
            let _ = writeln!(out, "for (i = 1; i <= size(P); i++) {{ print(P[i][2]); }}");
            let _ = writeln!(out, "resolution F = mres(I, 0);");
            let _ = writeln!(out, "print(betti(F), \"betti\");");
            expected_block(&mut out, "//", values);
        }
    }
    out
}
