//! Distribution families: the extended Pareto law and the reference models
//! with known second-order tail behaviour.

mod epd;
mod reference;

pub use epd::EpdParams;
pub use reference::ReferenceModel;
