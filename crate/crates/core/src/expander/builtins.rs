use core::fmt;

/// Statement-level operators implemented by the runtime rather than in
/// source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Print,
    SleepMs,
    PaintDialogWindow,
    PaintText,
    Warn,
    /// `begin for_each_event(event, closed); ... end for_each_event;`
    /// repeats its body once per scripted event until `closed` is non-zero.
    ForEachEvent,
    /// `begin when_equal(a, b); ... end when_equal;` runs its body only if
    /// the two values are equal.
    WhenEqual,
    NewThread,
    WaitZeroSemaphore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Arity {
    Exactly(usize),
    AtLeast(usize),
}

impl Builtin {
    pub const ALL: [Builtin; 9] = [
        Builtin::Print,
        Builtin::SleepMs,
        Builtin::PaintDialogWindow,
        Builtin::PaintText,
        Builtin::Warn,
        Builtin::ForEachEvent,
        Builtin::WhenEqual,
        Builtin::NewThread,
        Builtin::WaitZeroSemaphore,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Print => "print",
            Builtin::SleepMs => "sleep_ms",
            Builtin::PaintDialogWindow => "paint_dialog_window",
            Builtin::PaintText => "paint_text",
            Builtin::Warn => "warn",
            Builtin::ForEachEvent => "for_each_event",
            Builtin::WhenEqual => "when_equal",
            Builtin::NewThread => "new_thread",
            Builtin::WaitZeroSemaphore => "wait_zero_semaphore",
        }
    }

    pub fn lookup(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub(crate) fn arity(self) -> Arity {
        match self {
            Builtin::Print | Builtin::SleepMs | Builtin::NewThread | Builtin::WaitZeroSemaphore => {
                Arity::Exactly(1)
            }
            Builtin::PaintDialogWindow | Builtin::PaintText => Arity::Exactly(3),
            Builtin::ForEachEvent | Builtin::WhenEqual => Arity::Exactly(2),
            Builtin::Warn => Arity::AtLeast(1),
        }
    }

    pub fn takes_block(self) -> bool {
        matches!(
            self,
            Builtin::ForEachEvent | Builtin::WhenEqual | Builtin::NewThread
        )
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Functions usable inside expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinFn {
    Max,
    StringLength,
}

impl BuiltinFn {
    pub fn name(self) -> &'static str {
        match self {
            BuiltinFn::Max => "max",
            BuiltinFn::StringLength => "string_length",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            BuiltinFn::Max => 2,
            BuiltinFn::StringLength => 1,
        }
    }

    pub fn lookup(name: &str) -> Option<BuiltinFn> {
        [BuiltinFn::Max, BuiltinFn::StringLength]
            .into_iter()
            .find(|f| f.name() == name)
    }
}
