use super::Graph;
use crate::{Error, Result};

/// Parses `n` followed by one `i j` pair per line. Blank lines and lines
/// starting with `#` are skipped. Error offsets are 1-based line numbers.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((line, head)) = lines.next() else {
        return Err(Error::parse(1, "missing vertex count"));
    };
    let n: usize = head
        .parse()
        .map_err(|_| Error::parse(line, format!("vertex count {head:?} is not an integer")))?;

    let mut edges = Vec::new();
    for (line, l) in lines {
        let tokens: Vec<&str> = l.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected two indices, got {l:?}"),
            ));
        }
        let parse = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("{t:?} is not a vertex index")))
        };
        let (i, j) = (parse(tokens[0])?, parse(tokens[1])?);
        if i == j {
            return Err(Error::parse(line, format!("self-loop at vertex {i}")));
        }
        if i >= n || j >= n {
            return Err(Error::parse(
                line,
                format!("edge ({i}, {j}) has an endpoint outside 0..{n}"),
            ));
        }
        edges.push((i, j));
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_p3() {
        let g = parse_edge_list("3\n0 1\n1 2").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn duplicate_collapses_to_k2() {
        let g = parse_edge_list("2\n0 1\n1 0").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_edge_list("4\n0 0"),
            Err(Error::Parse { offset: 2, ref message }) if message.contains("self-loop")
        ));
        assert!(matches!(
            parse_edge_list("4\n0 4"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("4\n\n0 x"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("four"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(parse_edge_list("").is_err());
    }
}
