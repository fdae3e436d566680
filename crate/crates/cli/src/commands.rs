use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex;
use qbnwalk::fock::{BASIS_MAX_N, CAR_MAX_N};
use qbnwalk::io::{
    from_json, to_json, write_series_header, write_series_rows, CoinFile, PositionFile, SpecFile, StateFile,
};
use qbnwalk::scalar::unitarity_defect;
use qbnwalk::{
    averaged_ladder, build_eigenmix_state, builtin_example, decompose, distribution, geometric_ladder, haar_unitary,
    hadamard_vector, limit_distribution_with, product_state, stationary_check, tol, verify_car_with_tol,
    verify_hadamard_basis, BuiltinExample, CVector, ClosedForm, CoinOperatorSystem, Distribution, EigenComponentSpec,
    Error, Evolution, LimitOptions, PositionVector, PowerMethod, VertexIndex, WalkState, MAX_N, MAX_STEPS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Command, Opts};

pub const USAGE: u8 = 2;
pub const DIMENSION: u8 = 3;
pub const INVARIANT: u8 = 4;
pub const HYPOTHESIS: u8 = 5;

const DEFAULT_STEPS: u64 = 16;
const DEFAULT_STATIONARY_STEPS: u64 = 128;
const DEFAULT_HORIZON: u64 = 4096;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Serde(_) => USAGE,
            Error::Dimension(_) => DIMENSION,
            Error::Invalid(_) | Error::Numerical(_) => INVARIANT,
            Error::NotEigenvector { .. } => HYPOTHESIS,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

pub fn run(command: Command, o: &Opts) -> Outcome {
    match command {
        Command::Simulate => simulate(o),
        Command::Verify => verify(o),
        Command::Average => average(o),
        Command::RandomCoins => random_coins(o),
        Command::Example => example(o),
        Command::State => state(o),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(USAGE, format!("cannot read {}: {e}", path.display())))
}

fn parse<'a, D: serde::Deserialize<'a>>(path: &Path, text: &'a str) -> Result<D, Failure> {
    from_json(text).map_err(|e| Failure::new(USAGE, format!("cannot parse {}: {e}", path.display())))
}

fn required<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, Failure> {
    path.as_deref().ok_or_else(|| Failure::new(USAGE, format!("missing --{flag}")))
}

fn load_coins(o: &Opts) -> Result<CoinOperatorSystem, Failure> {
    let path = required(&o.coins, "coins")?;
    let file: CoinFile = parse(path, &read(path)?)?;
    Ok(file.to_system()?)
}

fn load_state(path: &Path) -> Result<WalkState, Failure> {
    let file: StateFile = parse(path, &read(path)?)?;
    Ok(file.to_state()?)
}

fn load_spec(path: &Path, system: &CoinOperatorSystem) -> Result<EigenComponentSpec, Failure> {
    let file: SpecFile = parse(path, &read(path)?)?;
    check_shape(system, file.n, file.dim, "spec")?;
    Ok(file.to_spec()?)
}

fn write_file(path: &Path, bytes: &[u8]) -> Outcome {
    fs::write(path, bytes).map_err(|e| Failure::new(USAGE, format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Outcome {
    match out {
        Some(path) => write_file(path, bytes),
        None => {
            std::io::stdout().write_all(bytes).map_err(|e| Failure::new(USAGE, format!("cannot write output: {e}")))
        }
    }
}

fn check_shape(system: &CoinOperatorSystem, n: usize, dim: usize, what: &str) -> Outcome {
    if n != system.n() || dim != system.dim() {
        return Err(Failure::new(
            DIMENSION,
            format!(
                "{what} has n = {n}, dim = {dim} but the coin system has n = {}, dim = {}",
                system.n(),
                system.dim()
            ),
        ));
    }
    Ok(())
}

fn check_sizes(n: usize, dim: usize) -> Outcome {
    if n > MAX_N {
        return Err(Failure::new(DIMENSION, format!("n = {n} exceeds the supported maximum {MAX_N}")));
    }
    if dim < n + 1 {
        return Err(Failure::new(DIMENSION, format!("dim = {dim} is below n + 1 = {}", n + 1)));
    }
    Ok(())
}

fn check_steps(t: u64, flag: &str) -> Outcome {
    if t > MAX_STEPS {
        return Err(Failure::new(USAGE, format!("--{flag} {t} exceeds the supported maximum {MAX_STEPS}")));
    }
    Ok(())
}

fn check_valid_coins(system: &CoinOperatorSystem, tolerance: f64) -> Outcome {
    let v = system.validate(tolerance);
    if !v.pass {
        return Err(Failure::new(
            INVARIANT,
            format!(
                "coin system is invalid (cross deviation {:e}, unitarity deviation {:e}, tolerance {tolerance:e})",
                v.cross_deviation, v.unitarity_deviation
            ),
        ));
    }
    Ok(())
}

fn check_unit(state: &WalkState, tolerance: f64) -> Outcome {
    let err = (state.norm_sqr() - 1.0).abs();
    if err > tolerance {
        return Err(Failure::new(INVARIANT, format!("initial state is not normalized (|‖Φ‖² - 1| = {err:e})")));
    }
    Ok(())
}

fn check_total(dist: &Distribution, tolerance: f64, label: &str) -> Outcome {
    let err = dist.normalization_error();
    if err > tolerance {
        return Err(Failure::new(INVARIANT, format!("probabilities at {label} sum to 1 only within {err:e}")));
    }
    Ok(())
}

fn series_row(buf: &mut Vec<u8>, label: &str, dist: &Distribution) {
    write_series_rows(buf, label, dist).expect("writing to memory");
}

fn simulate(o: &Opts) -> Outcome {
    let system = load_coins(o)?;
    let initial = load_state(required(&o.state, "state")?)?;
    check_shape(&system, initial.n(), initial.dim(), "state")?;
    let steps = o.steps.unwrap_or(DEFAULT_STEPS);
    check_steps(steps, "steps")?;
    let tolerance = o.tol.unwrap_or(tol::VALIDATION);
    check_valid_coins(&system, tolerance)?;
    check_unit(&initial, tolerance)?;

    let mut buf = Vec::new();
    write_series_header(&mut buf, "t").expect("writing to memory");
    if o.closed_form {
        let closed = ClosedForm::new(&system, &decompose(&initial), PowerMethod::Iterated)?;
        for (t, dist) in closed.series(steps)?.iter().enumerate() {
            check_total(dist, tolerance, &format!("t = {t}"))?;
            series_row(&mut buf, &t.to_string(), dist);
        }
    } else {
        let evolution = Evolution::new(&system);
        let mut cur = initial.clone();
        let mut next = initial;
        for t in 0..=steps {
            if t > 0 {
                evolution.apply_into(&cur, &mut next);
                std::mem::swap(&mut cur, &mut next);
            }
            let dist = distribution(&cur);
            check_total(&dist, tolerance, &format!("t = {t}"))?;
            series_row(&mut buf, &t.to_string(), &dist);
        }
    }
    emit(&o.out, &buf)
}

#[derive(Serialize)]
struct Check {
    name: String,
    max_deviation: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, max_deviation: f64, tolerance: f64) -> Self {
        Check { name: name.into(), max_deviation, tolerance, pass: max_deviation <= tolerance }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    dim: Option<usize>,
    checks: Vec<Check>,
    skipped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stationarity: Option<qbnwalk::StationaryReport>,
    pass: bool,
}

fn verify(o: &Opts) -> Outcome {
    let system = match o.coins {
        Some(_) => Some(load_coins(o)?),
        None => None,
    };
    let n = match (o.n, &system) {
        (Some(n), Some(s)) if n != s.n() => {
            return Err(Failure::new(DIMENSION, format!("--n {n} does not match the coin system's n = {}", s.n())))
        }
        (Some(n), _) => n,
        (None, Some(s)) => s.n(),
        (None, None) => return Err(Failure::new(USAGE, "verify needs --n or --coins")),
    };
    if n > MAX_N {
        return Err(Failure::new(DIMENSION, format!("n = {n} exceeds the supported maximum {MAX_N}")));
    }

    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    if n <= CAR_MAX_N {
        let car = verify_car_with_tol::<f64>(n, o.tol.unwrap_or(tol::AMPLITUDE))?;
        for r in car.relations {
            checks.push(Check::new(format!("car: {}", r.name), r.max_deviation, car.tolerance));
        }
    } else {
        skipped.push(format!("car: exhaustive sweep limited to n <= {CAR_MAX_N}"));
    }
    if n <= BASIS_MAX_N {
        let b = verify_hadamard_basis::<f64>(n, o.tol.unwrap_or(tol::AMPLITUDE))?;
        checks.push(Check::new("basis: orthonormality", b.gram_deviation, b.tolerance));
        checks.push(Check::new("basis: shift eigenrelation", b.eigen_deviation, b.tolerance));
        checks.push(Check::new("basis: fixed point", b.fixed_point_deviation, b.tolerance));
    } else {
        skipped.push(format!("basis: dense sweep limited to n <= {BASIS_MAX_N}"));
    }

    let mut stationarity = None;
    if let Some(system) = &system {
        let tolerance = o.tol.unwrap_or(tol::VALIDATION);
        let v = system.validate(tolerance);
        checks.push(Check::new("coins: cross relations", v.cross_deviation, tolerance));
        checks.push(Check::new("coins: unitary sum", v.unitarity_deviation, tolerance));
        let defect = system.weighted_sums().iter().map(|w| unitarity_defect(&w.matrix)).fold(0.0, f64::max);
        checks.push(Check::new("coins: weighted sums unitary", defect, tolerance));
        if let Some(path) = &o.state {
            let initial = load_state(path)?;
            check_shape(system, initial.n(), initial.dim(), "state")?;
            check_unit(&initial, tol::NORMALIZATION)?;
            let t_max = o.steps.unwrap_or(DEFAULT_STATIONARY_STEPS);
            check_steps(t_max, "steps")?;
            let r = stationary_check(system, &initial, t_max, tolerance)?;
            checks.push(Check::new("state: stationary distribution", r.max_deviation, r.tolerance));
            stationarity = Some(r);
        }
    } else if o.state.is_some() {
        return Err(Failure::new(USAGE, "--state needs --coins"));
    }

    let pass = checks.iter().all(|c| c.pass);
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
    let report = VerifyReport { n, dim: system.as_ref().map(|s| s.dim()), checks, skipped, stationarity, pass };
    emit(&o.out, to_json(&report)?.as_bytes())?;
    if pass {
        Ok(())
    } else {
        Err(Failure::new(INVARIANT, format!("verification failed: {}", failed.join(", "))))
    }
}

fn average(o: &Opts) -> Outcome {
    let system = load_coins(o)?;
    let horizon = o.horizon.unwrap_or(DEFAULT_HORIZON);
    if horizon == 0 {
        return Err(Failure::new(USAGE, "--horizon must be at least 1"));
    }
    check_steps(horizon, "horizon")?;
    let tolerance = o.tol.unwrap_or(tol::VALIDATION);
    check_valid_coins(&system, tolerance)?;

    let (initial, spec) = match (&o.spec, &o.state) {
        (Some(_), Some(_)) => return Err(Failure::new(USAGE, "give either --spec or --state, not both")),
        (Some(path), None) => {
            let spec = load_spec(path, &system)?;
            (build_eigenmix_state(&system, &spec)?.state, Some(spec))
        }
        (None, Some(path)) => {
            let initial = load_state(path)?;
            check_shape(&system, initial.n(), initial.dim(), "state")?;
            check_unit(&initial, tolerance)?;
            (initial, None)
        }
        (None, None) => return Err(Failure::new(USAGE, "average needs --spec or --state")),
    };

    // the limit comes first so that a bad spec fails before the long run
    let limit = match &spec {
        Some(spec) => {
            let options =
                LimitOptions { eigenvector_tolerance: o.tol.unwrap_or(tol::EIGENVECTOR), ..Default::default() };
            Some(limit_distribution_with(&system, spec, options)?)
        }
        None => None,
    };

    let mut buf = Vec::new();
    write_series_header(&mut buf, "T").expect("writing to memory");
    for (t, dist) in averaged_ladder(&system, &initial, &geometric_ladder(horizon))? {
        check_total(&dist, tolerance, &format!("T = {t}"))?;
        series_row(&mut buf, &t.to_string(), &dist);
    }
    if let Some(limit) = limit {
        check_total(&limit, tolerance, "the limit")?;
        series_row(&mut buf, "limit", &limit);
    }
    emit(&o.out, &buf)
}

fn random_coins(o: &Opts) -> Outcome {
    let n = o.n.ok_or_else(|| Failure::new(USAGE, "random-coins needs --n"))?;
    let dim = o.dim.unwrap_or(n + 1);
    check_sizes(n, dim)?;
    if let Some(p) = &o.partition {
        if p.len() != n + 1 || p.contains(&0) || p.iter().sum::<usize>() != dim {
            return Err(Failure::new(
                DIMENSION,
                format!("--partition needs {} positive block sizes summing to {dim}", n + 1),
            ));
        }
    }
    let system = CoinOperatorSystem::random(n, dim, o.seed.unwrap_or(0), o.partition.as_deref())?;
    emit(&o.out, to_json(&CoinFile::from_system(&system))?.as_bytes())
}

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn example(o: &Opts) -> Outcome {
    let id = o.id.as_deref().ok_or_else(|| Failure::new(USAGE, "example needs --id"))?;
    let which: BuiltinExample = id.parse()?;
    let system = builtin_example::<f64>(which.id())?;
    let dir = o.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| Failure::new(USAGE, format!("cannot create {}: {e}", dir.display())))?;

    let coins_path = dir.join(format!("example-{id}-coins.json"));
    write_file(&coins_path, to_json(&CoinFile::from_system(&system))?.as_bytes())?;
    let companion = match which {
        BuiltinExample::Swap2 => {
            let targets = [c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)];
            let spec = EigenComponentSpec::nearest_eigenvalues(&system, &targets)?;
            let path = dir.join(format!("example-{id}-spec.json"));
            write_file(&path, to_json(&SpecFile::from_spec(system.n(), system.dim(), &spec))?.as_bytes())?;
            path
        }
        BuiltinExample::Diagonal4 => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let rows = [[0.0, 0.0, r, r], [0.0, 0.0, r, -r], [r, r, 0.0, 0.0], [r, -r, 0.0, 0.0]];
            let vectors = rows.iter().map(|row| CVector::from_iterator(4, row.iter().map(|&x| c(x, 0.0)))).collect();
            let psi = build_eigenmix_state(&system, &EigenComponentSpec::from_vectors(vectors))?.state;
            let path = dir.join(format!("example-{id}-state.json"));
            write_file(&path, to_json(&StateFile::from_state(&psi))?.as_bytes())?;
            path
        }
    };
    emit(&None, format!("{}\n{}\n", coins_path.display(), companion.display()).as_bytes())
}

fn vertex(n: usize, sigma: usize) -> Result<VertexIndex, Failure> {
    if sigma >= 1 << (n + 1) {
        return Err(Failure::new(DIMENSION, format!("vertex {sigma} is outside the hypercube for n = {n}")));
    }
    Ok(VertexIndex(sigma))
}

fn state(o: &Opts) -> Outcome {
    if let Some(path) = &o.spec {
        let system = load_coins(o)?;
        let spec = load_spec(path, &system)?;
        let mix = build_eigenmix_state(&system, &spec)?;
        return emit(&o.out, to_json(&StateFile::from_state(&mix.state))?.as_bytes());
    }

    let position = match (o.hadamard, o.vertex, &o.position) {
        (Some(s), None, None) => {
            let n = o.n.ok_or_else(|| Failure::new(USAGE, "--hadamard needs --n"))?;
            check_sizes(n, n + 1)?;
            hadamard_vector::<f64>(n, vertex(n, s)?)?
        }
        (None, Some(s), None) => {
            let n = o.n.ok_or_else(|| Failure::new(USAGE, "--vertex needs --n"))?;
            check_sizes(n, n + 1)?;
            PositionVector::basis(n, vertex(n, s)?)?
        }
        (None, None, Some(path)) => {
            let file: PositionFile = parse(path, &read(path)?)?;
            if o.n.is_some_and(|n| n != file.n) {
                return Err(Failure::new(DIMENSION, format!("--n does not match the position file's n = {}", file.n)));
            }
            file.to_vector()?
        }
        (None, None, None) => return Err(Failure::new(USAGE, "state needs one of --hadamard, --vertex, --position")),
        _ => return Err(Failure::new(USAGE, "give only one of --hadamard, --vertex, --position")),
    };
    let n = position.n();
    let dim = o.dim.ok_or_else(|| Failure::new(USAGE, "state needs --dim"))?;
    check_sizes(n, dim)?;

    let coin = if o.random_coin {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.unwrap_or(0));
        haar_unitary::<f64, _>(dim, &mut rng).column(0).into_owned()
    } else {
        let j = o.coin_index.unwrap_or(0);
        if j >= dim {
            return Err(Failure::new(DIMENSION, format!("--coin-index {j} is out of range for dim = {dim}")));
        }
        let mut e = CVector::zeros(dim);
        e[j] = c(1.0, 0.0);
        e
    };
    let walk = product_state(&position, &coin)?;
    if let Some(path) = &o.position_out {
        write_file(path, to_json(&PositionFile::from_vector(&position))?.as_bytes())?;
    }
    emit(&o.out, to_json(&StateFile::from_state(&walk))?.as_bytes())
}
