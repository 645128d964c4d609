// Byte cursor shared by the tree and forest parsers. Whitespace is ignored
// everywhere.

use super::TreeError;

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn offset(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, byte: u8, expected: &'static str) -> Result<(), TreeError> {
        if self.eat(byte) {
            return Ok(());
        }
        let offset = self.offset();
        if self.pos >= self.src.len() && matches!(byte, b']' | b')') {
            Err(TreeError::Unbalanced { offset })
        } else {
            Err(TreeError::Syntax { offset, expected })
        }
    }

    /// Reads a run of bytes not in `stop` (and not whitespace).
    pub(crate) fn token(&mut self, stop: &[u8]) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let b = self.src[self.pos];
            if stop.contains(&b) || b.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
        // Input came from a &str and we only split on ASCII bytes.
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    pub(crate) fn finish(&mut self) -> Result<(), TreeError> {
        match self.peek() {
            None => Ok(()),
            Some(b']') | Some(b')') => Err(TreeError::Unbalanced { offset: self.pos }),
            Some(_) => Err(TreeError::Syntax {
                offset: self.pos,
                expected: "end of input",
            }),
        }
    }
}
