//! Text-grid paint surface, scripted events, and the prelude operators.

mod events;
mod prelude;
mod surface;

pub use events::{parse_events, Event, EventError, EventScript};
pub use prelude::{prelude_program, prelude_source, PreludeVariant};
pub use surface::PaintSurface;
