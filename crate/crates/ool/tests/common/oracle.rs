//! A second, table-driven account of dialog layout, written without the
//! prelude or the paint builtins. Goldens are checked against it.

pub enum Part {
    Message(&'static str),
    Button(&'static str),
    Row(Vec<Part>),
}

/// Minimal (width, height) of a part.
pub fn min_size(p: &Part) -> (usize, usize) {
    match p {
        Part::Message(t) => (t.chars().count(), 1),
        Part::Button(l) => (l.chars().count() + 4, 1),
        Part::Row(kids) => kids.iter().map(min_size).fold((0, 0), |(w, h), (kw, kh)| (w + kw, h.max(kh))),
    }
}

/// Content size of a dialog: widest part by total height.
pub fn dialog_size(parts: &[Part]) -> (usize, usize) {
    parts.iter().map(min_size).fold((0, 0), |(w, h), (pw, ph)| (w.max(pw), h + ph))
}

struct Grid {
    cols: usize,
    rows: Vec<Vec<char>>,
}

impl Grid {
    fn put(&mut self, x: usize, y: usize, c: char) {
        if x < self.cols && y < self.rows.len() {
            self.rows[y][x] = c;
        }
    }

    fn text(&mut self, x: usize, y: usize, s: &str) {
        for (i, c) in s.chars().enumerate() {
            self.put(x + i, y, c);
        }
    }
}

fn paint(g: &mut Grid, p: &Part, x: usize, y: usize) {
    match p {
        Part::Message(t) => g.text(x, y, t),
        Part::Button(l) => g.text(x, y, &format!("[ {l} ]")),
        Part::Row(kids) => {
            let mut x = x;
            for k in kids {
                paint(g, k, x, y);
                x += min_size(k).0;
            }
        }
    }
}

/// The surface dump after showing one dialog at the origin.
pub fn render(title: &str, parts: &[Part], cols: usize, rows: usize) -> String {
    let (w, h) = dialog_size(parts);
    let mut g = Grid {
        cols,
        rows: vec![vec![' '; cols]; rows],
    };
    for x in 0..w + 2 {
        let edge = if x == 0 || x == w + 1 { '+' } else { '-' };
        g.put(x, 0, edge);
        g.put(x, h + 1, edge);
    }
    for y in 1..h + 1 {
        g.put(0, y, '|');
        g.put(w + 1, y, '|');
    }
    for (i, c) in title.chars().enumerate() {
        if 2 + i <= w {
            g.put(2 + i, 0, c);
        }
    }
    let mut y = 1;
    for p in parts {
        paint(&mut g, p, 1, y);
        y += min_size(p).1;
    }
    let mut out = String::new();
    for row in g.rows {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end_matches(' '));
        out.push('\n');
    }
    out
}

pub fn hello_parts() -> Vec<Part> {
    vec![Part::Message("Hello, world!"), Part::Button("Ok")]
}

pub fn ok_cancel_parts() -> Vec<Part> {
    vec![
        Part::Message("Hello, world!"),
        Part::Row(vec![Part::Button("Cancel"), Part::Button("Ok")]),
    ]
}

pub fn yes_no_parts() -> Vec<Part> {
    vec![
        Part::Message("Please answer"),
        Part::Row(vec![Part::Button("Yes"), Part::Button("No")]),
    ]
}
