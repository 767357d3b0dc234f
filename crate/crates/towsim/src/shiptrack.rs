//! Ship maneuver plan and exact tow-point kinematics.
//!
//! The ship moves at constant speed along piecewise legs: straight runs at
//! a fixed compass course and constant-rate turns. Course is measured in
//! degrees clockwise from the +y axis, so the velocity at course alpha is
//! (V sin alpha, V cos alpha). Positions on turn legs are closed-form
//! circular arcs; no numerical integration is involved, which keeps the
//! tow-point boundary condition exact at every query time.

use crate::vec2::Vec2;
use thiserror::Error;

/// Tolerance (degrees) for the declared course of a straight leg matching
/// the course the previous leg ends at.
const COURSE_CONTINUITY_TOL_DEG: f64 = 1e-6;

/// Slack (seconds) accepted past the trajectory end before a query is
/// treated as out of range; integrator stage times can overshoot the final
/// instant by rounding.
const TIME_SLACK_S: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum TrajectoryError {
    #[error("trajectory needs at least one leg")]
    EmptyLegs,
    #[error("leg {index}: {message}")]
    InvalidLeg { index: usize, message: String },
    #[error("leg {index} declares course {declared} deg but the previous leg ends at {expected} deg")]
    CourseDiscontinuity {
        index: usize,
        declared: f64,
        expected: f64,
    },
    #[error("time {t} s outside the trajectory span [0, {duration} s]")]
    TimeOutOfRange { t: f64, duration: f64 },
}

/// One leg of the maneuver plan. Ship speed is shared by all legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrajectoryLeg {
    Straight {
        /// Compass course, degrees clockwise from +y.
        course_deg: f64,
        duration: f64,
    },
    Turn {
        /// Signed course rate in degrees per minute (negative: course
        /// decreasing).
        rate_deg_per_min: f64,
        duration: f64,
    },
}

impl TrajectoryLeg {
    fn duration(&self) -> f64 {
        match self {
            TrajectoryLeg::Straight { duration, .. } | TrajectoryLeg::Turn { duration, .. } => {
                *duration
            }
        }
    }
}

/// A leg with its precomputed start time, start position, and start course.
#[derive(Debug, Clone, Copy)]
struct CompiledLeg {
    start_time: f64,
    start_pos: Vec2,
    /// Course at the start of the leg, degrees.
    start_course_deg: f64,
    /// Course rate, deg/s (zero on straight legs).
    course_rate_deg_s: f64,
    duration: f64,
}

impl CompiledLeg {
    fn end_course_deg(&self) -> f64 {
        self.start_course_deg + self.course_rate_deg_s * self.duration
    }

    fn end_pos(&self, speed: f64) -> Vec2 {
        self.position_at(speed, self.duration)
    }

    /// Position `dt` seconds into the leg.
    fn position_at(&self, speed: f64, dt: f64) -> Vec2 {
        let alpha0 = self.start_course_deg.to_radians();
        if self.course_rate_deg_s == 0.0 {
            let (s, c) = alpha0.sin_cos();
            self.start_pos + Vec2::new(speed * s * dt, speed * c * dt)
        } else {
            let omega = self.course_rate_deg_s.to_radians();
            let alpha = alpha0 + omega * dt;
            self.start_pos
                + Vec2::new(
                    speed / omega * (alpha0.cos() - alpha.cos()),
                    speed / omega * (alpha.sin() - alpha0.sin()),
                )
        }
    }
}

/// Tow-point boundary condition: position, velocity, and acceleration of
/// the cable attachment, identical to the ship's.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TowPointKinematics {
    pub position: Vec2,
    pub velocity: Vec2,
    pub acceleration: Vec2,
}

/// Compiled maneuver plan; immutable after construction.
#[derive(Debug, Clone)]
pub struct ShipTrajectory {
    speed: f64,
    legs: Vec<CompiledLeg>,
    total_duration: f64,
}

/// Compile a maneuver plan, chaining leg start states and rejecting
/// discontinuous course hand-offs.
pub fn build_trajectory(
    initial_position: Vec2,
    speed: f64,
    legs: &[TrajectoryLeg],
) -> Result<ShipTrajectory, TrajectoryError> {
    if legs.is_empty() {
        return Err(TrajectoryError::EmptyLegs);
    }
    if !(speed > 0.0) || !speed.is_finite() {
        return Err(TrajectoryError::InvalidLeg {
            index: 0,
            message: format!("ship speed must be positive, got {speed}"),
        });
    }
    let mut compiled: Vec<CompiledLeg> = Vec::with_capacity(legs.len());
    let mut time = 0.0;
    let mut pos = initial_position;
    let mut course = match legs[0] {
        TrajectoryLeg::Straight { course_deg, .. } => course_deg,
        TrajectoryLeg::Turn { .. } => {
            return Err(TrajectoryError::InvalidLeg {
                index: 1,
                message: "first leg must be straight so the initial course is defined".to_string(),
            })
        }
    };
    for (i, leg) in legs.iter().enumerate() {
        let duration = leg.duration();
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(TrajectoryError::InvalidLeg {
                index: i + 1,
                message: format!("duration must be positive, got {duration}"),
            });
        }
        let rate = match *leg {
            TrajectoryLeg::Straight { course_deg, .. } => {
                if (course_deg - course).abs() > COURSE_CONTINUITY_TOL_DEG {
                    return Err(TrajectoryError::CourseDiscontinuity {
                        index: i + 1,
                        declared: course_deg,
                        expected: course,
                    });
                }
                course = course_deg;
                0.0
            }
            TrajectoryLeg::Turn {
                rate_deg_per_min, ..
            } => {
                if rate_deg_per_min == 0.0 || !rate_deg_per_min.is_finite() {
                    return Err(TrajectoryError::InvalidLeg {
                        index: i + 1,
                        message: "turn rate must be nonzero".to_string(),
                    });
                }
                rate_deg_per_min / 60.0
            }
        };
        let compiled_leg = CompiledLeg {
            start_time: time,
            start_pos: pos,
            start_course_deg: course,
            course_rate_deg_s: rate,
            duration,
        };
        time += duration;
        pos = compiled_leg.end_pos(speed);
        course = compiled_leg.end_course_deg();
        compiled.push(compiled_leg);
    }
    Ok(ShipTrajectory {
        speed,
        legs: compiled,
        total_duration: time,
    })
}

impl ShipTrajectory {
    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn total_duration(&self) -> f64 {
        self.total_duration
    }

    /// Course of the first leg, degrees.
    pub fn initial_course_deg(&self) -> f64 {
        self.legs[0].start_course_deg
    }

    /// Course of the final leg's end, degrees.
    pub fn final_course_deg(&self) -> f64 {
        self.legs.last().expect("non-empty").end_course_deg()
    }

    fn leg_at(&self, t: f64) -> Result<(&CompiledLeg, f64), TrajectoryError> {
        if !t.is_finite() || t < -TIME_SLACK_S || t > self.total_duration + TIME_SLACK_S {
            return Err(TrajectoryError::TimeOutOfRange {
                t,
                duration: self.total_duration,
            });
        }
        let t = t.clamp(0.0, self.total_duration);
        // Boundary instants belong to the later leg.
        let idx = self
            .legs
            .partition_point(|leg| leg.start_time + leg.duration <= t)
            .min(self.legs.len() - 1);
        let leg = &self.legs[idx];
        Ok((leg, t - leg.start_time))
    }

    /// Course at time `t`, degrees clockwise from +y.
    pub fn course_deg_at(&self, t: f64) -> Result<f64, TrajectoryError> {
        let (leg, dt) = self.leg_at(t)?;
        Ok(leg.start_course_deg + leg.course_rate_deg_s * dt)
    }

    /// Exact tow-point position, velocity, and acceleration at time `t`.
    pub fn tow_kinematics_at(&self, t: f64) -> Result<TowPointKinematics, TrajectoryError> {
        let (leg, dt) = self.leg_at(t)?;
        let alpha = (leg.start_course_deg + leg.course_rate_deg_s * dt).to_radians();
        let (s, c) = alpha.sin_cos();
        let velocity = Vec2::new(self.speed * s, self.speed * c);
        let acceleration = if leg.course_rate_deg_s == 0.0 {
            Vec2::ZERO
        } else {
            let omega = leg.course_rate_deg_s.to_radians();
            Vec2::new(self.speed * omega * c, -self.speed * omega * s)
        };
        Ok(TowPointKinematics {
            position: leg.position_at(self.speed, dt),
            velocity,
            acceleration,
        })
    }
}

/// The reference maneuver: 140 deg course for 12 min, -30 deg/min turn for
/// 4 min down to 20 deg, then 20 deg for the remaining 14 min.
pub fn reference_legs() -> Vec<TrajectoryLeg> {
    vec![
        TrajectoryLeg::Straight {
            course_deg: 140.0,
            duration: 720.0,
        },
        TrajectoryLeg::Turn {
            rate_deg_per_min: -30.0,
            duration: 240.0,
        },
        TrajectoryLeg::Straight {
            course_deg: 20.0,
            duration: 840.0,
        },
    ]
}
