//! The `eval` subcommand: run one operation on explicit inputs and print
//! the result to stdout (scalars plainly, structures as JSON).

use clap::Args;
use leibniz_core::calculus::{
    act, carre_du_champ, cs_div, cs_grad, div, grad, partial_seminorm, BimoduleElement,
};
use leibniz_core::norms::{
    decompose_in_dual_ball, is_doubly_stochastic, is_substochastic, is_weakly_majorized,
    kfan_dual_extreme_points, sort_abs_desc, NormSpec,
};
use leibniz_core::operators::{
    delta_uniform, dirichlet_eval, i_matrix, l_matrix, mean_projection, opnorm_on_centered,
    theta_matrix, unit_contraction, Laplacian, OpNormMethod,
};
use leibniz_core::probability::{expectation, sigma_p};

use crate::{inputs, AnyError};

#[derive(Args)]
pub struct EvalArgs {
    /// Operation name, e.g. norm, dual-norm, sigma_p, expectation, theta,
    /// i-matrix, l-matrix, grad, div, cs-grad, cs-div, partial-seminorm,
    /// acted-seminorm, dirichlet, carre-du-champ, unit-contraction,
    /// mean-projection, delta-uniform, opnorm, extreme-points, decompose,
    /// sort-abs-desc, weak-majorization, substochastic, doubly-stochastic.
    #[arg(long)]
    op: String,
    /// Vector as a JSON array or @file.
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    /// Measure weights as a JSON array or @file.
    #[arg(long)]
    mu: Option<String>,
    /// Matrix as JSON rows (or flat row-major array) or @file.
    #[arg(long)]
    matrix: Option<String>,
    /// Norm spec: p=<real>|p=inf|kfan=<k>|sumaug.
    #[arg(long)]
    norm: Option<String>,
    /// Moment exponent (real >= 1 or inf).
    #[arg(long)]
    p: Option<String>,
    /// Dimension for constructions that only need one.
    #[arg(long)]
    n: Option<usize>,
    /// Monte Carlo trials for opnorm (omit for the exact method).
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

struct EvalInputs<'a>(&'a EvalArgs);

impl EvalInputs<'_> {
    fn f(&self) -> Result<leibniz_core::linalg::RealVector, AnyError> {
        self.vector(&self.0.f, "--f")
    }

    fn g(&self) -> Result<leibniz_core::linalg::RealVector, AnyError> {
        self.vector(&self.0.g, "--g")
    }

    fn h(&self) -> Result<leibniz_core::linalg::RealVector, AnyError> {
        self.vector(&self.0.h, "--h")
    }

    fn vector(
        &self,
        slot: &Option<String>,
        name: &str,
    ) -> Result<leibniz_core::linalg::RealVector, AnyError> {
        let text = slot.as_ref().ok_or_else(|| format!("{name} is required"))?;
        inputs::parse_vector(text)
    }

    fn mu(&self) -> Result<leibniz_core::probability::DiscreteMeasure, AnyError> {
        let text = self.0.mu.as_ref().ok_or("--mu is required")?;
        inputs::parse_measure(text)
    }

    fn matrix(&self) -> Result<leibniz_core::linalg::SquareMatrix, AnyError> {
        let text = self.0.matrix.as_ref().ok_or("--matrix is required")?;
        inputs::parse_matrix(text)
    }

    fn laplacian(&self) -> Result<Laplacian, AnyError> {
        Ok(Laplacian::new(self.matrix()?)?)
    }

    fn norm(&self) -> Result<NormSpec, AnyError> {
        let text = self.0.norm.as_ref().ok_or("--norm is required")?;
        Ok(text.parse()?)
    }

    fn p(&self) -> Result<leibniz_core::norms::Exponent, AnyError> {
        let text = self.0.p.as_ref().ok_or("--p is required")?;
        Ok(text.parse()?)
    }

    fn n(&self) -> Result<usize, AnyError> {
        self.0.n.ok_or_else(|| "--n is required".into())
    }
}

fn print_scalar(value: f64) {
    println!("{value}");
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), AnyError> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

pub fn run_eval(args: &EvalArgs) -> Result<(), AnyError> {
    let input = EvalInputs(args);
    match args.op.as_str() {
        "norm" => print_scalar(input.norm()?.eval(&input.f()?)?),
        "dual-norm" => print_scalar(input.norm()?.dual_eval(&input.f()?)?),
        "sort-abs-desc" => print_json(&sort_abs_desc(&input.f()?))?,
        "sigma_p" | "sigma-p" => print_scalar(sigma_p(&input.f()?, &input.mu()?, input.p()?)?),
        "expectation" => print_scalar(expectation(&input.f()?, &input.mu()?)?),
        "theta" => print_json(&theta_matrix(&input.f()?))?,
        "i-matrix" => print_json(&i_matrix(&input.f()?))?,
        "l-matrix" => print_json(&l_matrix(&input.f()?))?,
        "mean-projection" => print_json(&mean_projection(input.n()?)?)?,
        "delta-uniform" => print_json(delta_uniform(input.n()?)?.matrix())?,
        "grad" => print_json(&grad(&input.f()?))?,
        "cs-grad" => print_json(&cs_grad(&input.f()?))?,
        "div" => print_json(&div(&BimoduleElement::new(input.matrix()?)))?,
        "cs-div" => print_json(&cs_div(&BimoduleElement::new(input.matrix()?)))?,
        "act" => {
            let elem = BimoduleElement::new(input.matrix()?);
            print_json(&act(&input.f()?, &elem, &input.g()?)?)?
        }
        "partial-seminorm" => {
            let elem = BimoduleElement::new(input.matrix()?);
            print_scalar(partial_seminorm(&elem, &input.norm()?)?)
        }
        // Seminorm of f (grad g) h, the quantity behind the bimodule bound.
        "acted-seminorm" => {
            let elem = act(&input.f()?, &grad(&input.g()?), &input.h()?)?;
            print_scalar(partial_seminorm(&elem, &input.norm()?)?)
        }
        "dirichlet" => print_scalar(dirichlet_eval(
            &input.laplacian()?,
            &input.f()?,
            &input.g()?,
        )?),
        "carre-du-champ" => print_json(&carre_du_champ(
            &input.f()?,
            &input.g()?,
            &input.laplacian()?,
        )?)?,
        "unit-contraction" => print_json(&unit_contraction(&input.f()?))?,
        "opnorm" => {
            let method = match args.trials {
                Some(trials) => OpNormMethod::MonteCarlo {
                    trials,
                    seed: args.seed,
                },
                None => OpNormMethod::ExactPolyhedral,
            };
            print_scalar(opnorm_on_centered(
                &input.matrix()?,
                &input.norm()?,
                method,
            )?)
        }
        "extreme-points" => {
            let n = input.n()?;
            match input.norm()? {
                NormSpec::KyFan(k) => print_json(&kfan_dual_extreme_points(n, k)?)?,
                other => {
                    return Err(format!("extreme-points needs a kfan norm, got {other}").into())
                }
            }
        }
        "decompose" => {
            let v = input.f()?;
            match input.norm()? {
                NormSpec::KyFan(k) => print_json(&decompose_in_dual_ball(&v, k)?)?,
                other => return Err(format!("decompose needs a kfan norm, got {other}").into()),
            }
        }
        "weak-majorization" => {
            println!("{}", is_weakly_majorized(&input.f()?, &input.g()?)?)
        }
        "substochastic" => println!("{}", is_substochastic(&input.matrix()?)),
        "doubly-stochastic" => println!("{}", is_doubly_stochastic(&input.matrix()?)),
        other => return Err(format!("unknown op: {other}").into()),
    }
    Ok(())
}
