use serde::{Deserialize, Serialize};

use super::builtin;
use super::{FiniteGroup, Origin};
use crate::error::GroupError;
use crate::reps::IrrepDoc;

/// Group description as it appears in input documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    S3,
    Q8,
    Klein4,
    A4,
    Custom {
        cayley: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        /// Irreducible unitary representations; required for the group-algebra
        /// pipelines on custom groups.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        irreps: Option<Vec<IrrepDoc>>,
    },
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Cyclic { n } => builtin::cyclic(*n),
        GroupSpec::Product { factors } => {
            let groups: Vec<FiniteGroup> = factors.iter().map(build_group).collect::<Result<_, _>>()?;
            builtin::product(&groups)
        }
        GroupSpec::S3 => builtin::s3(),
        GroupSpec::Q8 => builtin::q8(),
        GroupSpec::Klein4 => builtin::klein4(),
        GroupSpec::A4 => builtin::a4(),
        GroupSpec::Custom { cayley, labels, .. } => {
            FiniteGroup::from_cayley(cayley.clone(), labels.clone(), Origin::Custom)
        }
    }
}
