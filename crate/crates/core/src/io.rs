//! JSON file formats for instances and allocations. Indices are 0-based.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Allocation, Instance, Kind, SolveReport, Value};
use crate::quantile::Quantile;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub agents: usize,
    pub items: usize,
    pub quantiles: Vec<Quantile>,
    pub values: Vec<Vec<Value>>,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<Instance> {
        if self.quantiles.len() != self.agents || self.values.len() != self.agents {
            return Err(Error::InvalidInstance(format!(
                "\"agents\" is {} but there are {} quantiles and {} value rows",
                self.agents,
                self.quantiles.len(),
                self.values.len()
            )));
        }
        if let Some((i, row)) = self.values.iter().enumerate().find(|(_, r)| r.len() != self.items) {
            return Err(Error::InvalidInstance(format!(
                "\"items\" is {} but value row {i} has {} entries",
                self.items,
                row.len()
            )));
        }
        Instance::new(self.kind, self.quantiles.clone(), self.values.clone())
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::InvalidInstance(e.to_string()))?;
        file.to_instance()
    }

    pub fn read(path: &Path) -> Result<Instance> {
        Self::parse(&read_text(path)?)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(instance: &Instance) -> Self {
        Self {
            kind: instance.kind(),
            agents: instance.agents(),
            items: instance.items(),
            quantiles: instance.quantiles().to_vec(),
            values: instance.values().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AllocationFile {
    pub owner: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub welfare: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasible: Option<bool>,
}

impl AllocationFile {
    pub fn plain(allocation: &Allocation) -> Self {
        Self {
            owner: allocation.owner().to_vec(),
            welfare: None,
            algorithm: None,
            feasible: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidAllocation(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    /// The allocation, checked against `instance`.
    pub fn to_allocation(&self, instance: &Instance) -> Result<Allocation> {
        Allocation::for_instance(self.owner.clone(), instance)
    }
}

impl From<&SolveReport> for AllocationFile {
    fn from(report: &SolveReport) -> Self {
        Self {
            owner: report.allocation.owner().to_vec(),
            welfare: Some(report.welfare.get()),
            algorithm: Some(report.algorithm.to_string()),
            feasible: Some(report.feasible),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInstance(format!("cannot read {}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"kind":"goods","agents":2,"items":3,"quantiles":["1/2","0/1"],"values":[[1,2,3],[4,5,6]]}"#;

    #[test]
    fn instance_round_trip() {
        let inst = InstanceFile::parse(SAMPLE).unwrap();
        assert_eq!(inst.quantile(0), Quantile::new(1, 2).unwrap());
        let text = to_json(&InstanceFile::from(&inst));
        assert_eq!(InstanceFile::parse(&text).unwrap(), inst);
    }

    #[test]
    fn malformed_instances() {
        let bad = [
            r#"{"kind":"goods","agents":2,"items":3,"quantiles":["1/2"],"values":[[1,2,3],[4,5,6]]}"#,
            r#"{"kind":"goods","agents":1,"items":2,"quantiles":["2/4"],"values":[[1,2]]}"#,
            r#"{"kind":"goods","agents":1,"items":2,"quantiles":["1/2"],"values":[[1,-2]]}"#,
            r#"{"kind":"goods","agents":1,"items":2,"quantiles":["1/2"],"values":[[1,2.5]]}"#,
            r#"{"kind":"gifts","agents":1,"items":1,"quantiles":["1/2"],"values":[[1]]}"#,
            r#"{"kind":"goods","agents":1,"items":3,"quantiles":["1/2"],"values":[[1,2]]}"#,
        ];
        for text in bad {
            assert!(InstanceFile::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn allocation_round_trip() {
        let inst = InstanceFile::parse(SAMPLE).unwrap();
        let file = AllocationFile::parse(r#"{"owner":[0,1,1],"welfare":7}"#).unwrap();
        assert_eq!(file.welfare, Some(7));
        let a = file.to_allocation(&inst).unwrap();
        assert_eq!(AllocationFile::parse(&to_json(&AllocationFile::plain(&a))).unwrap().owner, vec![0, 1, 1]);
        assert!(AllocationFile::parse(r#"{"owner":[0,2,1]}"#).unwrap().to_allocation(&inst).is_err());
        assert!(AllocationFile::parse(r#"{"owner":[0,1]}"#).unwrap().to_allocation(&inst).is_err());
    }
}
