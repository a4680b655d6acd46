//! Matching diagrams between two words: every vertex has degree one,
//! same-row edges join opposite colors, cross-row edges join equal colors.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::word::{Color, Word};
use super::DiagramError;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Row {
    Top,
    Bottom,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub row: Row,
    pub pos: usize,
}

impl Vertex {
    pub fn top(pos: usize) -> Self {
        Vertex { row: Row::Top, pos }
    }

    pub fn bottom(pos: usize) -> Self {
        Vertex {
            row: Row::Bottom,
            pos,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Top => write!(f, "t{}", self.pos),
            Row::Bottom => write!(f, "b{}", self.pos),
        }
    }
}

/// Perfect matching on the vertices of a top word (source) and a bottom word
/// (target). Edges are stored canonically: each pair ordered, list sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    top: Word,
    bottom: Word,
    edges: Vec<(Vertex, Vertex)>,
}

impl Diagram {
    pub fn new(
        top: Word,
        bottom: Word,
        edges: Vec<(Vertex, Vertex)>,
    ) -> Result<Self, DiagramError> {
        let mut canon: Vec<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        canon.sort();
        let d = Diagram {
            top,
            bottom,
            edges: canon,
        };
        d.validate()?;
        Ok(d)
    }

    fn color(&self, v: Vertex) -> Result<Color, DiagramError> {
        let word = match v.row {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        };
        if v.pos >= word.len() {
            return Err(DiagramError::Malformed(format!(
                "vertex {v} outside word of length {}",
                word.len()
            )));
        }
        Ok(word.letter(v.pos))
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let total = self.top.len() + self.bottom.len();
        if 2 * self.edges.len() != total {
            return Err(DiagramError::Malformed(format!(
                "{} edges cannot match {} vertices",
                self.edges.len(),
                total
            )));
        }
        let mut seen = vec![false; total];
        let index = |v: Vertex| -> usize {
            match v.row {
                Row::Top => v.pos,
                Row::Bottom => self.top.len() + v.pos,
            }
        };
        for &(a, b) in &self.edges {
            let (ca, cb) = (self.color(a)?, self.color(b)?);
            if a.row == b.row {
                if a == b {
                    return Err(DiagramError::Malformed(format!("looped edge at {a}")));
                }
                if ca == cb {
                    return Err(DiagramError::Malformed(format!(
                        "same-row edge {a}-{b} joins equal colors"
                    )));
                }
            } else if ca != cb {
                return Err(DiagramError::Malformed(format!(
                    "cross-row edge {a}-{b} joins opposite colors"
                )));
            }
            for v in [a, b] {
                let i = index(v);
                if seen[i] {
                    return Err(DiagramError::Malformed(format!(
                        "vertex {v} has degree > 1"
                    )));
                }
                seen[i] = true;
            }
        }
        Ok(())
    }

    pub fn top(&self) -> &Word {
        &self.top
    }

    pub fn bottom(&self) -> &Word {
        &self.bottom
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Identity diagram on a word.
    pub fn identity(word: &Word) -> Self {
        let edges = (0..word.len())
            .map(|i| (Vertex::top(i), Vertex::bottom(i)))
            .collect();
        Diagram::new(word.clone(), word.clone(), edges).expect("identity is well-formed")
    }

    /// Superposition left-to-right.
    pub fn tensor(&self, other: &Diagram) -> Diagram {
        let (st, sb) = (self.top.len(), self.bottom.len());
        let shift = |v: Vertex| match v.row {
            Row::Top => Vertex::top(v.pos + st),
            Row::Bottom => Vertex::bottom(v.pos + sb),
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (shift(a), shift(b))));
        Diagram::new(
            self.top.concat(&other.top),
            self.bottom.concat(&other.bottom),
            edges,
        )
        .expect("tensor of well-formed diagrams is well-formed")
    }

    /// Stacks `self` atop `other` (so `other` is applied after `self`),
    /// traces paths through the identified middle row, and counts the closed
    /// loops erased. Requires `self.bottom == other.top`.
    pub fn stack(&self, other: &Diagram) -> Result<(Diagram, usize), DiagramError> {
        if self.bottom != other.top {
            return Err(DiagramError::WordMismatch {
                got: other.top.to_string(),
                expected: self.bottom.to_string(),
            });
        }
        let a = self.top.len();
        let b = self.bottom.len();
        let c = other.bottom.len();
        // vertex ids: 0..a top, a..a+b middle, a+b..a+b+c bottom
        let x_id = |v: Vertex| match v.row {
            Row::Top => v.pos,
            Row::Bottom => a + v.pos,
        };
        let y_id = |v: Vertex| match v.row {
            Row::Top => a + v.pos,
            Row::Bottom => a + b + v.pos,
        };
        let total = a + b + c;
        let mut x_adj = vec![usize::MAX; total];
        let mut y_adj = vec![usize::MAX; total];
        for &(u, v) in &self.edges {
            let (iu, iv) = (x_id(u), x_id(v));
            x_adj[iu] = iv;
            x_adj[iv] = iu;
        }
        for &(u, v) in &other.edges {
            let (iu, iv) = (y_id(u), y_id(v));
            y_adj[iu] = iv;
            y_adj[iv] = iu;
        }
        let is_mid = |i: usize| i >= a && i < a + b;
        let external = |i: usize| -> Vertex {
            if i < a {
                Vertex::top(i)
            } else {
                Vertex::bottom(i - a - b)
            }
        };
        let mut visited = vec![false; total];
        let mut edges = Vec::new();
        // trace paths starting from each external vertex
        for start in (0..a).chain(a + b..total) {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut cur = start;
            // the first step uses the layer that owns the start vertex
            let mut use_x = start < a;
            loop {
                let next = if use_x { x_adj[cur] } else { y_adj[cur] };
                debug_assert_ne!(next, usize::MAX, "missing edge during trace");
                visited[next] = true;
                if !is_mid(next) {
                    edges.push((external(start), external(next)));
                    break;
                }
                // from a middle vertex continue along the other layer
                use_x = !use_x;
                cur = next;
            }
        }
        // remaining middle vertices lie on closed loops
        let mut loops = 0;
        for start in a..a + b {
            if visited[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            let mut use_x = true;
            loop {
                visited[cur] = true;
                let next = if use_x { x_adj[cur] } else { y_adj[cur] };
                use_x = !use_x;
                cur = next;
                if cur == start && use_x {
                    break;
                }
            }
        }
        let d = Diagram::new(self.top.clone(), other.bottom.clone(), edges)?;
        Ok((d, loops))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=>{}:", self.top, self.bottom)?;
        for (k, (u, v)) in self.edges.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.edges.len()))?;
        for (u, v) in &self.edges {
            seq.serialize_element(&[u.to_string(), v.to_string()])?;
        }
        seq.end()
    }
}

/// All diagrams between two words, by backtracking over the first unmatched
/// vertex. Sizes stay tiny in every use here.
pub fn enumerate_diagrams(top: &Word, bottom: &Word) -> Vec<Diagram> {
    let n_top = top.len();
    let total = n_top + bottom.len();
    let vertex = |i: usize| -> Vertex {
        if i < n_top {
            Vertex::top(i)
        } else {
            Vertex::bottom(i - n_top)
        }
    };
    let color = |i: usize| -> Color {
        if i < n_top {
            top.letter(i)
        } else {
            bottom.letter(i - n_top)
        }
    };
    let compatible = |i: usize, j: usize| -> bool {
        let same_row = (i < n_top) == (j < n_top);
        if same_row {
            color(i) != color(j)
        } else {
            color(i) == color(j)
        }
    };
    let mut out = Vec::new();
    let mut matched = vec![usize::MAX; total];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    fn go(
        total: usize,
        matched: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize)>,
        compatible: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let Some(i) = (0..total).find(|&i| matched[i] == usize::MAX) else {
            out.push(pairs.clone());
            return;
        };
        for j in i + 1..total {
            if matched[j] == usize::MAX && compatible(i, j) {
                matched[i] = j;
                matched[j] = i;
                pairs.push((i, j));
                go(total, matched, pairs, compatible, out);
                pairs.pop();
                matched[i] = usize::MAX;
                matched[j] = usize::MAX;
            }
        }
    }
    let mut raw = Vec::new();
    go(total, &mut matched, &mut pairs, &compatible, &mut raw);
    for pairs in raw {
        let edges = pairs
            .into_iter()
            .map(|(i, j)| (vertex(i), vertex(j)))
            .collect();
        out.push(
            Diagram::new(top.clone(), bottom.clone(), edges).expect("enumerated diagram is valid"),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_colors() {
        let w = Word(vec![Color::Black, Color::Black]);
        // same-row edge between two blacks
        assert!(Diagram::new(
            w.clone(),
            Word::empty(),
            vec![(Vertex::top(0), Vertex::top(1))]
        )
        .is_err());
        // cross-row edge between black and white
        let bw = Word(vec![Color::Black]);
        let ww = Word(vec![Color::White]);
        assert!(Diagram::new(bw, ww, vec![(Vertex::top(0), Vertex::bottom(0))]).is_err());
    }

    #[test]
    fn permutation_diagram_count() {
        // End(V^{tensor m}) consists of exactly m! diagrams
        for m in 0..=4usize {
            let w = Word::repeated(Color::Black, m);
            let count = enumerate_diagrams(&w, &w).len();
            let fact: usize = (1..=m).product();
            assert_eq!(count, fact.max(1));
        }
    }

    #[test]
    fn loop_counting_in_stack() {
        // cup then cap: one loop, empty result diagram
        let pair = Word(vec![Color::Black, Color::White]);
        let cup = Diagram::new(
            Word::empty(),
            pair.clone(),
            vec![(Vertex::bottom(0), Vertex::bottom(1))],
        )
        .unwrap();
        let cap =
            Diagram::new(pair, Word::empty(), vec![(Vertex::top(0), Vertex::top(1))]).unwrap();
        let (d, loops) = cup.stack(&cap).unwrap();
        assert_eq!(loops, 1);
        assert!(d.top().is_empty() && d.bottom().is_empty());
    }
}
