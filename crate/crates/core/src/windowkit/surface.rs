use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Character grid standing in for a pixel canvas. Paints outside the grid
/// are clipped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaintSurface {
    cols: usize,
    rows: usize,
    cells: Vec<char>,
    translation: (i64, i64),
}

impl PaintSurface {
    pub const DEFAULT_COLS: usize = 80;
    pub const DEFAULT_ROWS: usize = 25;

    pub fn new(cols: usize, rows: usize) -> Self {
        PaintSurface {
            cols,
            rows,
            cells: vec![' '; cols * rows],
            translation: (0, 0),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn translation(&self) -> (i64, i64) {
        self.translation
    }

    pub fn set_translation(&mut self, t: (i64, i64)) {
        self.translation = t;
    }

    pub fn get(&self, x: usize, y: usize) -> Option<char> {
        (x < self.cols && y < self.rows).then(|| self.cells[y * self.cols + x])
    }

    /// Writes at untranslated coordinates, clipping.
    fn put(&mut self, x: i64, y: i64, c: char) {
        if x < 0 || y < 0 {
            return;
        }
        let (x, y) = (x as usize, y as usize);
        if x < self.cols && y < self.rows {
            self.cells[y * self.cols + x] = c;
        }
    }

    /// Writes `text` at translated `(x, y)`.
    pub fn paint_text(&mut self, x: i64, y: i64, text: &str) {
        let (tx, ty) = self.translation;
        let (x, y) = (x.saturating_add(tx), y.saturating_add(ty));
        for (i, c) in text.chars().enumerate() {
            self.put(x.saturating_add(i as i64), y, c);
        }
    }

    /// Draws a `(w + 2) x (h + 2)` frame at the current translation with
    /// the title on the top edge from column 2, then moves the translation
    /// inside the frame.
    pub fn paint_dialog_window(&mut self, title: &str, w: i64, h: i64) {
        let (tx, ty) = self.translation;
        let (right, bottom) = (tx.saturating_add(w).saturating_add(1), ty.saturating_add(h).saturating_add(1));
        for x in tx + 1..right {
            self.put(x, ty, '-');
            self.put(x, bottom, '-');
        }
        for y in ty + 1..bottom {
            self.put(tx, y, '|');
            self.put(right, y, '|');
        }
        for (x, y) in [(tx, ty), (right, ty), (tx, bottom), (right, bottom)] {
            self.put(x, y, '+');
        }
        // The title may use columns 2..=w; column w + 1 is the corner.
        let room = usize::try_from(w - 1).unwrap_or(0);
        for (i, c) in title.chars().take(room).enumerate() {
            self.put(tx + 2 + i as i64, ty, c);
        }
        self.translation = (tx + 1, ty + 1);
    }

    /// Rows joined by newlines, trailing spaces trimmed, one final newline.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.cells.len() + self.rows);
        for row in self.cells.chunks(self.cols.max(1)).take(self.rows) {
            let line: String = row.iter().collect();
            out.push_str(line.trim_end_matches(' '));
            out.push('\n');
        }
        if self.cols == 0 {
            for _ in 0..self.rows {
                out.push('\n');
            }
        }
        out
    }
}

impl Default for PaintSurface {
    fn default() -> Self {
        PaintSurface::new(Self::DEFAULT_COLS, Self::DEFAULT_ROWS)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(s: &PaintSurface) -> Vec<String> {
        s.dump().lines().map(String::from).collect()
    }

    #[test]
    fn blank_surface_dump() {
        let dump = PaintSurface::default().dump();
        assert_eq!(dump, "\n".repeat(25));
    }

    #[test]
    fn hello_world_frame() {
        let mut s = PaintSurface::default();
        s.paint_dialog_window("Title", 13, 2);
        let r = rows(&s);
        assert_eq!(r[0], "+-Title-------+");
        assert_eq!(r[1], "|             |");
        assert_eq!(r[2], "|             |");
        assert_eq!(r[3], "+-------------+");
        assert_eq!(r[4], "");
        assert_eq!(s.translation(), (1, 1));
    }

    #[test]
    fn degenerate_frame_is_four_corners() {
        let mut s = PaintSurface::default();
        s.paint_dialog_window("Title", 0, 0);
        let r = rows(&s);
        assert_eq!(r[0], "++");
        assert_eq!(r[1], "++");
        assert_eq!(r[2], "");
    }

    #[test]
    fn long_title_is_truncated_before_corner() {
        let mut s = PaintSurface::default();
        s.paint_dialog_window("A long title", 5, 1);
        assert_eq!(rows(&s)[0], "+-A lo+");
    }

    #[test]
    fn text_lands_inside_frame() {
        let mut s = PaintSurface::default();
        s.set_translation((1, 1));
        s.paint_text(0, 0, "Hello, world!");
        assert_eq!(rows(&s)[1], " Hello, world!");
        assert_eq!(s.get(1, 1), Some('H'));
        assert_eq!(s.get(13, 1), Some('!'));
    }

    #[test]
    fn empty_and_clipped_text_leave_surface_unchanged() {
        let mut s = PaintSurface::new(10, 3);
        let blank = s.clone();
        s.paint_text(0, 0, "");
        s.paint_text(10, 0, "x");
        s.paint_text(0, 3, "x");
        s.paint_text(-5, 0, "abc");
        assert_eq!(s, blank);
        s.paint_text(8, 0, "abc");
        assert_eq!(rows(&s)[0], "        ab");
    }

    #[test]
    fn oversize_frame_is_clipped() {
        let mut s = PaintSurface::new(4, 2);
        s.paint_dialog_window("T", 10, 10);
        assert_eq!(s.dump(), "+-T-\n|\n");
    }
}
