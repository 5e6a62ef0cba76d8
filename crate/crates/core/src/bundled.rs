//! The two worked examples shipped with the crate.

use crate::fan::{FanFile, ResolutionFan};
use crate::hom::ConfigFile;

pub const X139_FAN: &str = include_str!("../data/x139.fan.json");
pub const X139_CONFIG: &str = include_str!("../data/x139.config.json");
pub const X1313_FAN: &str = include_str!("../data/x1313.fan.json");
pub const X1313_CONFIG: &str = include_str!("../data/x1313.config.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    X139,
    X1313,
}

impl Example {
    pub const ALL: [Example; 2] = [Example::X139, Example::X1313];

    pub fn name(self) -> &'static str {
        match self {
            Self::X139 => "x139",
            Self::X1313 => "x1313",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn fan_json(self) -> &'static str {
        match self {
            Self::X139 => X139_FAN,
            Self::X1313 => X1313_FAN,
        }
    }

    pub fn config_json(self) -> &'static str {
        match self {
            Self::X139 => X139_CONFIG,
            Self::X1313 => X1313_CONFIG,
        }
    }

    pub fn fan(self) -> ResolutionFan {
        let file: FanFile = serde_json::from_str(self.fan_json()).expect("bundled fan parses");
        file.into_fan().expect("bundled fan is well formed")
    }

    pub fn config(self) -> ConfigFile {
        serde_json::from_str(self.config_json()).expect("bundled config parses")
    }
}
