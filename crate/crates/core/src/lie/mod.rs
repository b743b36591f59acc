pub mod chevalley;
pub mod extension;
pub mod module;
pub mod realform;
pub mod roots;
pub mod structure;
pub mod table;
pub mod weights;
