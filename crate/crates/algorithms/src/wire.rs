//! Flat scalar encodings for protocol message bodies.
//!
//! Every message a program sends is one [`Label`]: a short tag naming the
//! protocol plus a scalar payload. Since a node may owe several protocols a
//! message to the same neighbor in the same round, outbound parts are
//! multiplexed into one `"bd"` bundle per neighbor and split again on
//! receipt.

use graph_core::{Label, NodeId, Scalar};

pub struct Enc(Vec<Scalar>);

impl Enc {
    pub fn new() -> Enc {
        Enc(Vec::new())
    }

    pub fn id(&mut self, v: NodeId) -> &mut Self {
        self.0.push(Scalar::I(i64::from(v)));
        self
    }

    pub fn int(&mut self, v: i64) -> &mut Self {
        self.0.push(Scalar::I(v));
        self
    }

    pub fn flag(&mut self, v: bool) -> &mut Self {
        self.0.push(Scalar::B(v));
        self
    }

    pub fn label(&mut self, l: &Label) -> &mut Self {
        self.0.push(Scalar::S(l.tag));
        self.0.push(Scalar::I(l.payload.len() as i64));
        self.0.extend(l.payload.iter().copied());
        self
    }

    pub fn opt_label(&mut self, l: Option<&Label>) -> &mut Self {
        match l {
            None => self.flag(false),
            Some(l) => self.flag(true).label(l),
        }
    }

    pub fn finish(self, tag: &str) -> Label {
        Label::new(tag, self.0)
    }
}

impl Default for Enc {
    fn default() -> Self {
        Enc::new()
    }
}

pub struct Dec<'a> {
    payload: &'a [Scalar],
    at: usize,
}

impl<'a> Dec<'a> {
    pub fn new(l: &'a Label) -> Dec<'a> {
        Dec { payload: &l.payload, at: 0 }
    }

    pub fn id(&mut self) -> Option<NodeId> {
        self.int().and_then(|v| u32::try_from(v).ok())
    }

    pub fn int(&mut self) -> Option<i64> {
        match self.payload.get(self.at) {
            Some(Scalar::I(v)) => {
                self.at += 1;
                Some(*v)
            }
            _ => None,
        }
    }

    pub fn flag(&mut self) -> Option<bool> {
        match self.payload.get(self.at) {
            Some(Scalar::B(v)) => {
                self.at += 1;
                Some(*v)
            }
            _ => None,
        }
    }

    pub fn label(&mut self) -> Option<Label> {
        let tag = match self.payload.get(self.at) {
            Some(Scalar::S(t)) => *t,
            _ => return None,
        };
        let len = match self.payload.get(self.at + 1) {
            Some(Scalar::I(v)) => usize::try_from(*v).ok()?,
            _ => return None,
        };
        let body = self.payload.get(self.at + 2..self.at + 2 + len)?;
        self.at += 2 + len;
        Some(Label::new(tag, body.to_vec()))
    }

    pub fn opt_label(&mut self) -> Option<Option<Label>> {
        match self.flag()? {
            false => Some(None),
            true => self.label().map(Some),
        }
    }

    pub fn done(&self) -> bool {
        self.at == self.payload.len()
    }
}

/// Packs protocol parts into the one message-per-neighbor-per-round the
/// runtime allows.
pub fn bundle(parts: Vec<Label>) -> Label {
    let mut e = Enc::new();
    for p in &parts {
        e.label(p);
    }
    e.finish("bd")
}

pub fn unbundle(l: &Label) -> Vec<Label> {
    if l.tag != "bd" {
        return vec![l.clone()];
    }
    let mut d = Dec::new(l);
    let mut out = Vec::new();
    while let Some(p) = d.label() {
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let inner = Label::new("x", vec![Scalar::I(3), Scalar::S("hi"), Scalar::B(true)]);
        let msg = Enc::new()
            .id(7)
            .opt_label(None)
            .opt_label(Some(&inner))
            .flag(false)
            .finish("t");
        let mut d = Dec::new(&msg);
        assert_eq!(d.id(), Some(7));
        assert_eq!(d.opt_label(), Some(None));
        assert_eq!(d.opt_label(), Some(Some(inner.clone())));
        assert_eq!(d.flag(), Some(false));
        assert!(d.done());

        let b = bundle(vec![msg.clone(), inner.clone()]);
        assert_eq!(unbundle(&b), vec![msg, inner]);
    }
}
