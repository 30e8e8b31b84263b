use serde::{Deserialize, Serialize};

use torsion_forge_core::arith::Field;
use torsion_forge_core::hensel::{lift_with_trace, verify_lift, LiftProblem};

use crate::args::LiftArgs;
use crate::fields::{poly, with_field};
use crate::{CliError, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub level: String,
    pub lambda1: String,
    pub lambda2: String,
    #[serde(rename = "R")]
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftJson {
    pub field: String,
    pub k: String,
    pub level: String,
    pub b: String,
    pub u: String,
    #[serde(rename = "R1")]
    pub r1: String,
    #[serde(rename = "R")]
    pub root: String,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<Vec<StepJson>>,
}

fn lift_in<K: Field>(field: K, args: &LiftArgs) -> Result<LiftJson, CliError> {
    let b = poly(&field, "b", &args.b)?;
    let u = poly(&field, "u", &args.u)?;
    let r1 = poly(&field, "R1", &args.r1)?;
    let problem = LiftProblem::new(args.k, b, u, r1, args.level).map_err(CliError::precondition)?;
    let result = lift_with_trace(&problem).map_err(CliError::precondition)?;
    let steps = args.explain.then(|| {
        result
            .trace
            .iter()
            .flatten()
            .map(|s| StepJson {
                level: s.level.to_string(),
                lambda1: s.lambda1.to_string(),
                lambda2: s.lambda2.to_string(),
                root: s.root.to_string(),
            })
            .collect()
    });
    Ok(LiftJson {
        field: field.tag(),
        k: args.k.to_string(),
        level: args.level.to_string(),
        b: problem.modulus().to_string(),
        u: problem.target().to_string(),
        r1: problem.initial_root().to_string(),
        root: result.root.to_string(),
        verified: verify_lift(&result, &problem),
        steps,
    })
}

pub fn run(args: &LiftArgs) -> Result<Outcome, CliError> {
    let json = with_field!(args.field, k => lift_in(k, args))?;
    let text = serde_json::to_string_pretty(&json).expect("lift report serializes");
    Ok(Outcome::new(text + "\n", json.verified))
}
