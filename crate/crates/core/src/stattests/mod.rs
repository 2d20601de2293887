//! Statistical evaluation: a subset of NIST SP 800-22, the P_T uniformity
//! meta-test and the successor repartition matrix.

pub mod battery;
pub mod nist;
pub mod repartition;
pub mod special;

pub use battery::{
    pt_meta, run_battery, BatteryConfig, PValueSet, RowSource, TestId, TestReport, TestRow,
};
pub use nist::{CusumMode, PValue};
pub use repartition::RepartitionMatrix;
