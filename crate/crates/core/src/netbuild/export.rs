use std::io::{self, Write};

use super::WeightedGraph;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Writes a GEXF 1.2 document with `category`, `lat`, `lon` and `paper_count`
/// node attributes. `label` supplies each node's display label.
pub fn write_gexf<W: Write>(
    g: &WeightedGraph,
    label: impl Fn(&str) -> String,
    mut out: W,
) -> io::Result<()> {
    let edge_type = if g.is_directed() {
        "directed"
    } else {
        "undirected"
    };
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#)?;
    writeln!(
        out,
        r#"<gexf xmlns="http://www.gexf.net/1.2draft" xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance" xsi:schemaLocation="http://www.gexf.net/1.2draft http://www.gexf.net/1.2draft/gexf.xsd" version="1.2">"#
    )?;
    writeln!(
        out,
        r#"  <graph mode="static" defaultedgetype="{edge_type}">"#
    )?;
    writeln!(out, r#"    <attributes class="node">"#)?;
    writeln!(
        out,
        r#"      <attribute id="0" title="category" type="string"/>"#
    )?;
    writeln!(
        out,
        r#"      <attribute id="1" title="lat" type="double"/>"#
    )?;
    writeln!(
        out,
        r#"      <attribute id="2" title="lon" type="double"/>"#
    )?;
    writeln!(
        out,
        r#"      <attribute id="3" title="paper_count" type="integer"/>"#
    )?;
    writeln!(out, r#"    </attributes>"#)?;
    writeln!(out, r#"    <nodes>"#)?;
    for (id, attrs) in g.nodes() {
        writeln!(
            out,
            r#"      <node id="{}" label="{}">"#,
            escape(id),
            escape(&label(id))
        )?;
        writeln!(out, r#"        <attvalues>"#)?;
        writeln!(
            out,
            r#"          <attvalue for="0" value="{}"/>"#,
            attrs.category
        )?;
        if let Some(p) = attrs.location {
            writeln!(out, r#"          <attvalue for="1" value="{}"/>"#, p.lat())?;
            writeln!(out, r#"          <attvalue for="2" value="{}"/>"#, p.lon())?;
        }
        writeln!(
            out,
            r#"          <attvalue for="3" value="{}"/>"#,
            attrs.paper_count
        )?;
        writeln!(out, r#"        </attvalues>"#)?;
        writeln!(out, r#"      </node>"#)?;
    }
    writeln!(out, r#"    </nodes>"#)?;
    writeln!(out, r#"    <edges>"#)?;
    for (n, (u, v, w)) in g.edges().enumerate() {
        writeln!(
            out,
            r#"      <edge id="{n}" source="{}" target="{}" weight="{w}"/>"#,
            escape(u),
            escape(v)
        )?;
    }
    writeln!(out, r#"    </edges>"#)?;
    writeln!(out, r#"  </graph>"#)?;
    writeln!(out, r#"</gexf>"#)?;
    Ok(())
}

/// `source,target,weight` rows in edge order.
pub fn write_edge_csv<W: Write>(g: &WeightedGraph, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["source", "target", "weight"])?;
    for (u, v, weight) in g.edges() {
        w.write_record([u, v, &weight.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
