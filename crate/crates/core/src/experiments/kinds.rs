#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    RatioDesk,
    Toy17,
    EventdCensus,
    PathExtension,
    ValidateModels,
    ExpansionAudit,
    PruneStats,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::RatioDesk,
        ExperimentKind::Toy17,
        ExperimentKind::EventdCensus,
        ExperimentKind::PathExtension,
        ExperimentKind::ValidateModels,
        ExperimentKind::ExpansionAudit,
        ExperimentKind::PruneStats,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::RatioDesk => "theorem1-desk",
            ExperimentKind::Toy17 => "toy17",
            ExperimentKind::EventdCensus => "eventd-census",
            ExperimentKind::PathExtension => "claim34",
            ExperimentKind::ValidateModels => "validate-models",
            ExperimentKind::ExpansionAudit => "expansion-audit",
            ExperimentKind::PruneStats => "prune-stats",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// CSV columns after `trial_index,per_trial_seed,status`.
    pub fn columns(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::RatioDesk => &["core_size", "kernel_size", "r", "ratio"],
            ExperimentKind::Toy17 => &["d", "class_count", "reconstructible", "second_eigenvalue", "below_threshold"],
            ExperimentKind::EventdCensus => &["kernel_size", "holding", "fraction", "truncated"],
            ExperimentKind::PathExtension => &["s", "extends", "solutions"],
            ExperimentKind::ValidateModels => &[
                "kernel_size",
                "structure_ok",
                "max_degree_ok",
                "prefix_violation",
                "path_count",
                "path_length_sum",
                "pairing_33",
            ],
            ExperimentKind::ExpansionAudit => &["kernel_size", "pruned_kernel_size", "alpha", "alpha_value", "exact"],
            ExperimentKind::PruneStats => {
                &["core_size", "kernel_size", "pruned_core_size", "pruned_kernel_size", "kernel_ratio"]
            }
        }
    }

    pub fn caps(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::RatioDesk => &["class_cap", "search_budget"],
            ExperimentKind::Toy17 => &["class_cap", "search_budget", "swaps", "spectral_iterations"],
            ExperimentKind::EventdCensus => &["size"],
            ExperimentKind::PathExtension => &[],
            ExperimentKind::ValidateModels => &[],
            ExperimentKind::ExpansionAudit => &["exact_vertices", "samples"],
            ExperimentKind::PruneStats => &[],
        }
    }

    pub fn params(self) -> &'static [&'static str] {
        match self {
            ExperimentKind::RatioDesk => &["position_bits"],
            ExperimentKind::Toy17 => &["d", "threshold", "position_bits"],
            ExperimentKind::EventdCensus => &[],
            ExperimentKind::PathExtension => &["s", "ambient", "position_bits"],
            ExperimentKind::ValidateModels => &["c_a", "max_degree"],
            ExperimentKind::ExpansionAudit => &[],
            ExperimentKind::PruneStats => &[],
        }
    }
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}
