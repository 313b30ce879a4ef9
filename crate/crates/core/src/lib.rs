//! Tail-adaptive inference-time candidate selection.
//!
//! Given a pool of reward-scored candidates for a prompt, this crate implements a family of
//! re-weighting selection policies — hard argmax (`bon`), exponential tilting (`sbon`),
//! affine/relu tilting (`itp`), and a tail-adaptive α-exponential interpolation (`bot`)
//! that chooses its order α from a Hill estimate of the prompt's reward-tail index — plus
//! the numerical machinery to analyse them:
//!
//! * [`numerics`] — scalar α-calculus (α-exponential / α-logarithm), divergence
//!   functionals (Tsallis, KL, χ², total variation), and the endpoint-gap Beta moment
//!   identities used by every other module.
//! * [`tail`] — Hill tail-index estimation over reward pools and the κ̂ → α mapping.
//! * [`policies`] — reward normalization, weight construction, selection distributions,
//!   and the full estimate-then-select pipeline.
//! * [`regret`] — a quadrature/Monte-Carlo evaluator for a three-term regret proxy
//!   (sampling error + ε·distortion − proxy gain) together with closed-form heavy- and
//!   light-tail expansions for cross-checking.
//! * [`simulator`] — synthetic reward worlds with controllable tail index and
//!   miscalibration, bootstrapped N-sweeps, and ablation grids.
//! * [`io`] — JSONL ingestion of scored candidates, CSV/JSON sweep serialization, and
//!   deterministic SVG plots.
//! * [`cli`] — the `tailalign` command-line front end wiring the above together.
//!
//! All randomness flows through explicitly seeded generators; every documented entry point
//! is deterministic given its seed.

pub mod cli;
pub mod io;
pub mod numerics;
pub mod policies;
pub(crate) mod quadrature;
pub mod regret;
pub mod simulator;
pub mod tail;
