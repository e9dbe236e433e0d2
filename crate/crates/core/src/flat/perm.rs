//! Small permutation helpers on `0..n`.

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `compose(a, b)[i] = a[b[i]]`, i.e. apply `b` first.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&j| a[j]).collect()
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &j in p {
        if j >= p.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// Cycles in order of their smallest element, each starting at that element.
pub fn cycles(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = p[x];
        }
        out.push(cyc);
    }
    out
}

/// Builds a permutation of `0..n` from cycles given with 1-based labels.
pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, String> {
    let mut p = identity(n);
    let mut seen = vec![false; n];
    for cyc in cycles {
        for (k, &x) in cyc.iter().enumerate() {
            if x == 0 || x > n {
                return Err(format!("label {x} out of range"));
            }
            if seen[x - 1] {
                return Err(format!("label {x} repeated"));
            }
            seen[x - 1] = true;
            let y = cyc[(k + 1) % cyc.len()];
            if y == 0 || y > n {
                return Err(format!("label {y} out of range"));
            }
            p[x - 1] = y - 1;
        }
    }
    Ok(p)
}

/// Formats a permutation in 1-based cycle notation, fixed points included.
pub fn to_cycle_string(p: &[usize]) -> String {
    cycles(p)
        .iter()
        .map(|c| {
            let labels: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", labels.join(" "))
        })
        .collect()
}
