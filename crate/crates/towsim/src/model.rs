//! Domain types for the towed chain: fluid environment, per-link physical
//! parameters, derived quantities, and configuration validation.
//!
//! Model assumptions baked into these types: links are rigid slender
//! cylinders of uniform density; the array is hinged at the cable end; the
//! water surface is still; cable deformation is neglected; drag
//! coefficients do not vary with angle of attack; ship motion is
//! unaffected by the towed chain.

use std::fmt;

use thiserror::Error;

/// Fluid environment shared by all links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidEnv {
    /// Density in kg/m^3.
    pub density: f64,
    /// Gravitational acceleration in m/s^2.
    pub gravity: f64,
}

impl Default for FluidEnv {
    fn default() -> Self {
        Self {
            density: 1000.0,
            gravity: 9.81,
        }
    }
}

/// Physical description of one rigid link (cable segment or sensor array).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyParams {
    /// Length in m.
    pub length: f64,
    /// Diameter in m.
    pub diameter: f64,
    /// Mass per unit length in kg/m.
    pub linear_density: f64,
    /// Normal (pressure) drag coefficient.
    pub drag_normal: f64,
    /// Tangential (skin friction) drag coefficient.
    pub drag_tangential: f64,
}

impl BodyParams {
    /// Split into `n` equal segments: length divides, diameter, density
    /// and drag coefficients are shared, so mass divides with length.
    pub fn split(&self, n: usize) -> Vec<BodyParams> {
        let segment = BodyParams {
            length: self.length / n as f64,
            ..*self
        };
        vec![segment; n]
    }
}

/// Quantities derived from a link's parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedBodyProps {
    /// Mass in kg (linear density times length).
    pub mass: f64,
    /// Moment of inertia about the leading node, m l^2 / 3 (uniform rod).
    pub inertia_about_lead: f64,
    /// Buoyant force in N of the displaced cylinder volume.
    pub buoyant_force: f64,
}

/// Drag law used by the steady-state solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SteadyDragModel {
    /// Skin drag of an aligned cylinder over the wetted girth pi D.
    #[default]
    Tangential,
    /// Pressure drag over the frontal width D.
    Normal,
}

impl fmt::Display for SteadyDragModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SteadyDragModel::Tangential => write!(f, "tangential"),
            SteadyDragModel::Normal => write!(f, "normal"),
        }
    }
}

/// Options for the steady-state (pitch/tension) computation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SteadyOptions {
    pub drag_model: SteadyDragModel,
    /// false: buoyancy added to weight in the force-balance denominators,
    /// exactly as the balance equations are printed; true: subtracted.
    pub buoyancy_opposes_weight: bool,
}

/// Full chain configuration: environment, ordered links (cable segments
/// first, sensor array last), and solver settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub fluid: FluidEnv,
    pub links: Vec<BodyParams>,
    /// Integration step in s.
    pub dt: f64,
    /// Simulated span in s.
    pub duration: f64,
    /// Emit one record every this many steps.
    pub output_stride: usize,
    /// Velocity floor guarding the 1/|V| drag singularities, m/s.
    pub v_epsilon: f64,
    /// Gauss-Legendre point count for drag integrals.
    pub quadrature_points: usize,
    /// Composite panels for the drag integrals.
    pub quadrature_panels: usize,
    pub steady: SteadyOptions,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            fluid: FluidEnv::default(),
            links: Vec::new(),
            dt: 0.1,
            duration: 1800.0,
            output_stride: 1,
            v_epsilon: 1e-9,
            quadrature_points: 5,
            quadrature_panels: 1,
            steady: SteadyOptions::default(),
        }
    }
}

/// Time plus per-link yaw state; the ODE state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub t: f64,
    /// Yaw of each link, rad, counterclockwise from +x.
    pub theta: Vec<f64>,
    /// Yaw rate of each link, rad/s.
    pub theta_dot: Vec<f64>,
}

impl ChainState {
    pub fn new(t: f64, theta: Vec<f64>, theta_dot: Vec<f64>) -> Self {
        assert_eq!(theta.len(), theta_dot.len());
        Self { t, theta, theta_dot }
    }

    pub fn links(&self) -> usize {
        self.theta.len()
    }

    /// Flatten to [theta.., theta_dot..] for the integrator.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = self.theta.clone();
        v.extend_from_slice(&self.theta_dot);
        v
    }

    pub fn from_vector(t: f64, v: &[f64]) -> Self {
        let n = v.len() / 2;
        Self {
            t,
            theta: v[..n].to_vec(),
            theta_dot: v[n..].to_vec(),
        }
    }
}

/// One or more named invariant violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ConfigError {
    pub issues: Vec<String>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.issues.join("; "))
    }
}

/// Mass, rod inertia about the leading node, and buoyant force.
pub fn derive_body_props(
    body: &BodyParams,
    fluid: &FluidEnv,
) -> Result<DerivedBodyProps, ConfigError> {
    let mut issues = Vec::new();
    check_positive(&mut issues, "length", body.length);
    check_positive(&mut issues, "diameter", body.diameter);
    check_positive(&mut issues, "mass_per_length", body.linear_density);
    check_positive(&mut issues, "cdn", body.drag_normal);
    check_positive(&mut issues, "cdt", body.drag_tangential);
    check_positive(&mut issues, "density", fluid.density);
    check_positive(&mut issues, "gravity", fluid.gravity);
    if !issues.is_empty() {
        return Err(ConfigError { issues });
    }
    let mass = body.linear_density * body.length;
    Ok(DerivedBodyProps {
        mass,
        inertia_about_lead: mass * body.length * body.length / 3.0,
        buoyant_force: fluid.density
            * fluid.gravity
            * std::f64::consts::PI
            * body.diameter
            * body.diameter
            / 4.0
            * body.length,
    })
}

fn check_positive(issues: &mut Vec<String>, name: &str, value: f64) {
    if !(value > 0.0) || !value.is_finite() {
        issues.push(format!("{name} must be positive, got {value}"));
    }
}

/// Check every invariant; report all violations, not only the first.
pub fn validate_config(cfg: ChainConfig) -> Result<ChainConfig, ConfigError> {
    let mut issues = Vec::new();
    check_positive(&mut issues, "density", cfg.fluid.density);
    check_positive(&mut issues, "gravity", cfg.fluid.gravity);
    if cfg.links.is_empty() {
        issues.push("at least one link required".to_string());
    }
    for (i, link) in cfg.links.iter().enumerate() {
        let mut link_issues = Vec::new();
        check_positive(&mut link_issues, "length", link.length);
        check_positive(&mut link_issues, "diameter", link.diameter);
        check_positive(&mut link_issues, "mass_per_length", link.linear_density);
        check_positive(&mut link_issues, "cdn", link.drag_normal);
        check_positive(&mut link_issues, "cdt", link.drag_tangential);
        issues.extend(
            link_issues
                .into_iter()
                .map(|msg| format!("link {}: {msg}", i + 1)),
        );
    }
    if !(cfg.dt > 0.0) || !cfg.dt.is_finite() {
        issues.push(format!("dt must be positive, got {}", cfg.dt));
    }
    if !(cfg.duration > 0.0) || !cfg.duration.is_finite() {
        issues.push(format!("duration must be positive, got {}", cfg.duration));
    }
    if cfg.output_stride < 1 {
        issues.push("output_stride must be at least 1".to_string());
    }
    if !(cfg.v_epsilon > 0.0) || !cfg.v_epsilon.is_finite() {
        issues.push(format!("v_epsilon must be positive, got {}", cfg.v_epsilon));
    }
    if cfg.quadrature_points < 2 {
        issues.push(format!(
            "quadrature_points must be at least 2, got {}",
            cfg.quadrature_points
        ));
    }
    if cfg.quadrature_panels < 1 {
        issues.push("quadrature_panels must be at least 1".to_string());
    }
    if issues.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigError { issues })
    }
}

/// Derived properties of every link in order.
pub fn derive_all(cfg: &ChainConfig) -> Result<Vec<DerivedBodyProps>, ConfigError> {
    cfg.links
        .iter()
        .map(|link| derive_body_props(link, &cfg.fluid))
        .collect()
}

/// Table-driven builder for the reference towing system: a cable split
/// into equal segments followed by the sensor array.
pub fn chain_links(cable: &BodyParams, segments: usize, array: &BodyParams) -> Vec<BodyParams> {
    if segments == 0 {
        return vec![*array];
    }
    let mut links = cable.split(segments);
    links.push(*array);
    links
}

impl ChainConfig {
    /// Index of the sensor array (last link).
    pub fn array_index(&self) -> Option<usize> {
        self.links.len().checked_sub(1)
    }

    pub fn validated(self) -> Result<Self, ConfigError> {
        validate_config(self)
    }
}

/// Table I cable parameters.
pub fn reference_cable() -> BodyParams {
    BodyParams {
        length: 723.0,
        diameter: 0.041,
        linear_density: 2.33,
        drag_normal: 2.0,
        drag_tangential: 0.015,
    }
}

/// Table I sensor-array parameters.
pub fn reference_array() -> BodyParams {
    BodyParams {
        length: 273.9,
        diameter: 0.079,
        linear_density: 5.07,
        drag_normal: 1.8,
        drag_tangential: 0.009,
    }
}

/// The reference configuration: cable in two segments plus the array.
pub fn reference_config() -> ChainConfig {
    ChainConfig {
        links: chain_links(&reference_cable(), 2, &reference_array()),
        ..ChainConfig::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cable_mass_from_table() {
        let props = derive_body_props(&reference_cable(), &FluidEnv::default()).unwrap();
        // mass/length times length
        assert_relative_eq!(props.mass, 2.33 * 723.0, epsilon = 1e-12);
        assert_relative_eq!(props.mass, 1684.59, epsilon = 1e-9);
    }

    #[test]
    fn array_mass_from_table() {
        let props = derive_body_props(&reference_array(), &FluidEnv::default()).unwrap();
        assert_relative_eq!(props.mass, 5.07 * 273.9, epsilon = 1e-12);
        assert_relative_eq!(props.mass, 1388.673, epsilon = 1e-9);
    }

    #[test]
    fn unit_rod_inertia() {
        let body = BodyParams {
            length: 1.0,
            diameter: 0.1,
            linear_density: 3.0,
            drag_normal: 1.0,
            drag_tangential: 1.0,
        };
        let props = derive_body_props(&body, &FluidEnv::default()).unwrap();
        assert_relative_eq!(props.inertia_about_lead, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn cable_buoyant_force() {
        let props = derive_body_props(&reference_cable(), &FluidEnv::default()).unwrap();
        // cylinder volume arithmetic, written out independently
        let expected = 1000.0 * 9.81 * std::f64::consts::PI * 0.041 * 0.041 / 4.0 * 723.0;
        assert_relative_eq!(props.buoyant_force, expected, epsilon = 1e-9);
        assert!((props.buoyant_force - 9.365e3).abs() < 5.0);
    }

    #[test]
    fn derive_rejects_nonpositive_fields() {
        let mut body = reference_cable();
        body.diameter = 0.0;
        let err = derive_body_props(&body, &FluidEnv::default()).unwrap_err();
        assert!(err.issues.iter().any(|m| m.contains("diameter")));
    }

    #[test]
    fn scaling_in_linear_density() {
        let fluid = FluidEnv::default();
        let base = reference_cable();
        let mut doubled = base;
        doubled.linear_density *= 2.0;
        let p0 = derive_body_props(&base, &fluid).unwrap();
        let p1 = derive_body_props(&doubled, &fluid).unwrap();
        assert_relative_eq!(p1.mass, 2.0 * p0.mass, epsilon = 1e-12);
        assert_relative_eq!(
            p1.inertia_about_lead,
            2.0 * p0.inertia_about_lead,
            epsilon = 1e-12
        );
        assert_relative_eq!(p1.buoyant_force, p0.buoyant_force, epsilon = 1e-12);
    }

    #[test]
    fn equal_split_preserves_total_mass() {
        let segments = reference_cable().split(2);
        assert_eq!(segments.len(), 2);
        let fluid = FluidEnv::default();
        let mut total = 0.0;
        for seg in &segments {
            assert_relative_eq!(seg.length, 361.5, epsilon = 1e-12);
            let props = derive_body_props(seg, &fluid).unwrap();
            assert_relative_eq!(props.mass, 842.295, epsilon = 1e-9);
            total += props.mass;
        }
        let full = derive_body_props(&reference_cable(), &fluid).unwrap();
        assert_relative_eq!(total, full.mass, epsilon = 1e-9);
    }

    #[test]
    fn paper_defaults_validate() {
        assert!(validate_config(reference_config()).is_ok());
    }

    #[test]
    fn zero_dt_is_rejected_by_name() {
        let mut cfg = reference_config();
        cfg.dt = 0.0;
        let err = validate_config(cfg).unwrap_err();
        assert!(err.issues.iter().any(|m| m.contains("dt must be positive")));
    }

    #[test]
    fn empty_links_rejected() {
        let cfg = ChainConfig::default();
        let err = validate_config(cfg).unwrap_err();
        assert!(err
            .issues
            .iter()
            .any(|m| m.contains("at least one link required")));
    }

    #[test]
    fn all_violations_reported_together() {
        let mut cfg = reference_config();
        cfg.dt = 0.0;
        cfg.v_epsilon = -1.0;
        cfg.output_stride = 0;
        cfg.links[0].length = -5.0;
        let err = validate_config(cfg).unwrap_err();
        assert!(err.issues.len() >= 4, "issues: {:?}", err.issues);
    }

    #[test]
    fn validation_is_idempotent() {
        let cfg = reference_config();
        let once = validate_config(cfg.clone()).unwrap();
        let twice = validate_config(once.clone()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(once, cfg);
    }

    #[test]
    fn state_vector_round_trip() {
        let state = ChainState::new(3.0, vec![0.1, 0.2, 0.3], vec![-0.1, 0.0, 0.1]);
        let v = state.to_vector();
        assert_eq!(ChainState::from_vector(3.0, &v), state);
    }
}
