use alloc::collections::VecDeque;
use alloc::string::String;
use core::fmt;

/// A scripted user action standing in for keyboard and mouse input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Event {
    Press { label: String },
}

impl Event {
    pub fn label(&self) -> &str {
        match self {
            Event::Press { label } => label,
        }
    }
}

/// Events in the order they are delivered; each is consumed once.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EventScript {
    events: VecDeque<Event>,
}

impl EventScript {
    pub fn new(events: impl IntoIterator<Item = Event>) -> Self {
        EventScript {
            events: events.into_iter().collect(),
        }
    }

    pub fn next_event(&mut self) -> Option<Event> {
        self.events.pop_front()
    }

    pub fn remaining(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event> {
        self.events.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for EventError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// One `press LABEL` per line; blank lines and `#` comments are skipped.
pub fn parse_events(text: &str) -> Result<EventScript, EventError> {
    let mut events = VecDeque::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let label = line
            .strip_prefix("press")
            .filter(|rest| rest.starts_with([' ', '\t']))
            .map(str::trim)
            .filter(|label| !label.is_empty());
        match label {
            Some(label) => events.push_back(Event::Press {
                label: label.into(),
            }),
            None => {
                return Err(EventError {
                    line: i + 1,
                    message: alloc::format!("expected `press LABEL`, found `{line}`"),
                })
            }
        }
    }
    Ok(EventScript { events })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_press() {
        let script = parse_events("press Yes").unwrap();
        assert_eq!(
            script.iter().cloned().collect::<alloc::vec::Vec<_>>(),
            [Event::Press { label: "Yes".into() }]
        );
    }

    #[test]
    fn empty_file() {
        assert!(parse_events("").unwrap().is_empty());
    }

    #[test]
    fn unknown_verb() {
        let err = parse_events("click Yes").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let mut script = parse_events("# header\r\n\r\npress  Ok Then  \r\npress No\n").unwrap();
        assert_eq!(script.remaining(), 2);
        assert_eq!(script.next_event().unwrap().label(), "Ok Then");
        assert_eq!(script.next_event().unwrap().label(), "No");
        assert_eq!(script.next_event(), None);
    }

    #[test]
    fn press_without_label_is_an_error() {
        assert_eq!(parse_events("press Yes\npress\n").unwrap_err().line, 2);
        assert_eq!(parse_events("pressYes").unwrap_err().line, 1);
    }
}
