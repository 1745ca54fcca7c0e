// Copyright 2026 The ftsnap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftsnap/transition_graph.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ftsnap/units.h"

namespace ftsnap {
namespace {

std::string where(const YAML::Node& node) {
  return "line " + std::to_string(node.Mark().line + 1);
}

double parse_theta(const YAML::Node& node) {
  return parse_quantity(node.as<std::string>(), Dimension::angle, where(node) + ": theta");
}

Mat2 parse_action(const YAML::Node& edge, double theta) {
  if (edge["matrix"]) {
    const YAML::Node m = edge["matrix"];
    if (!m.IsSequence() || m.size() != 2)
      throw ValidationError(where(m) + ": matrix must be 2x2 of [re, im] pairs");
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
      if (!m[r].IsSequence() || m[r].size() != 2)
        throw ValidationError(where(m) + ": matrix must be 2x2 of [re, im] pairs");
      for (int c = 0; c < 2; ++c) {
        const YAML::Node z = m[r][c];
        if (z.IsSequence() && z.size() == 2)
          out(r, c) = cplx(z[0].as<double>(), z[1].as<double>());
        else
          out(r, c) = z.as<double>();
      }
    }
    return out;
  }
  if (!edge["action"]) throw ValidationError(where(edge) + ": edge needs 'action' or 'matrix'");
  const std::string name = edge["action"].as<std::string>();
  const auto& p = paulis();
  if (name == "identity") return p[0];
  if (name == "s_theta") return logical_s_theta_2x2(theta);
  if (name == "s_theta_inv") return logical_s_theta_2x2(-theta);
  if (name == "pauli_x") return p[1];
  if (name == "pauli_y") return p[2];
  if (name == "pauli_z") return p[3];
  throw ValidationError(where(edge["action"]) + ": unknown action '" + name + "'");
}

void reject_unknown(const YAML::Node& node, std::initializer_list<const char*> allowed) {
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end())
      throw ValidationError(where(kv.first) + ": unknown key '" + key + "'");
  }
}

TransitionGraph from_node(const YAML::Node& root, const double* theta_override) {
  if (!root.IsMap()) throw ValidationError("graph file must be a mapping");
  reject_unknown(root, {"name", "theta", "start", "nodes", "edges"});
  TransitionGraph graph;
  graph.name = root["name"] ? root["name"].as<std::string>() : "graph";
  double theta = kPi / 2;
  if (root["theta"]) theta = parse_theta(root["theta"]);
  if (theta_override != nullptr) theta = *theta_override;
  if (!root["nodes"] || !root["nodes"].IsSequence())
    throw ValidationError("graph file needs a 'nodes' list");
  for (const auto& n : root["nodes"]) graph.nodes.push_back(n.as<std::string>());
  graph.start = root["start"] ? root["start"].as<std::string>()
                              : (graph.nodes.empty() ? "" : graph.nodes.front());
  if (root["edges"]) {
    for (const auto& e : root["edges"]) {
      reject_unknown(e, {"from", "to", "kind", "action", "matrix", "label"});
      if (!e["from"] || !e["to"]) throw ValidationError(where(e) + ": edge needs 'from' and 'to'");
      GraphEdge edge;
      edge.from = e["from"].as<std::string>();
      edge.to = e["to"].as<std::string>();
      const std::string kind = e["kind"] ? e["kind"].as<std::string>() : "jump";
      if (kind == "drive")
        edge.kind = EdgeKind::drive;
      else if (kind == "jump")
        edge.kind = EdgeKind::jump;
      else
        throw ValidationError(where(e["kind"]) + ": edge kind must be drive or jump");
      edge.action = parse_action(e, theta);
      edge.label = e["label"] ? e["label"].as<std::string>() : "";
      graph.edges.push_back(std::move(edge));
    }
  }
  graph.validate();
  return graph;
}

}  // namespace

std::string edge_kind_name(EdgeKind kind) { return kind == EdgeKind::drive ? "drive" : "jump"; }

double distance_from_identity(const Mat2& u) {
  const cplx tr = u.trace();
  const cplx phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : cplx(1.0);
  return (u - phase * Mat2::Identity()).norm();
}

void TransitionGraph::validate() const {
  auto known = [&](const std::string& n) {
    return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
  };
  if (nodes.empty()) throw ValidationError("graph '" + name + "' has no nodes");
  if (!known(start)) throw ValidationError("graph '" + name + "': unknown start node " + start);
  for (const auto& e : edges) {
    if (!known(e.from) || !known(e.to))
      throw ValidationError("graph '" + name + "': edge " + e.from + "->" + e.to +
                            " references an unknown node");
    if ((e.action.adjoint() * e.action - Mat2::Identity()).norm() > 1e-10)
      throw ValidationError("graph '" + name + "': edge " + e.from + "->" + e.to +
                            " has a non-unitary action");
    if (e.kind != EdgeKind::drive) continue;
    const bool paired = std::any_of(edges.begin(), edges.end(), [&](const GraphEdge& o) {
      return o.kind == EdgeKind::drive && o.from == e.to && o.to == e.from &&
             (o.action * e.action - Mat2::Identity()).norm() <= 1e-10;
    });
    if (!paired)
      throw ValidationError("graph '" + name + "': drive edge " + e.from + "->" + e.to +
                            " has no inverse drive edge");
  }
}

TransitionGraph TransitionGraph::parse(const std::string& text, const double* theta_override) {
  try {
    return from_node(YAML::Load(text), theta_override);
  } catch (const YAML::Exception& ex) {
    throw ValidationError(std::string("graph file: ") + ex.what());
  }
}

TransitionGraph TransitionGraph::load(const std::string& path, const double* theta_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str(), theta_override);
  } catch (const ValidationError& ex) {
    throw ValidationError(path + ": " + ex.what());
  }
}

PathIndependenceReport check_path_independence(const TransitionGraph& graph, double tolerance) {
  graph.validate();
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) id[graph.nodes[i]] = static_cast<int>(i);
  const int n = static_cast<int>(graph.nodes.size());

  // Undirected adjacency; traversing an edge backwards applies its inverse.
  std::vector<std::vector<int>> adjacent(n);
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    adjacent[id[graph.edges[k].from]].push_back(static_cast<int>(k));
    adjacent[id[graph.edges[k].to]].push_back(static_cast<int>(k));
  }

  // Breadth-first spanning tree. frame[v] is the composed action from start.
  std::vector<Mat2> frame(n, Mat2::Identity());
  std::vector<int> parent(n, -1), depth(n, -1);
  std::vector<bool> tree_edge(graph.edges.size(), false);
  const int root = id[graph.start];
  depth[root] = 0;
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int k : adjacent[u]) {
      const GraphEdge& e = graph.edges[k];
      const bool forward = id[e.from] == u;
      const int v = forward ? id[e.to] : id[e.from];
      if (depth[v] >= 0) continue;
      frame[v] = (forward ? e.action : Mat2(e.action.adjoint())) * frame[u];
      parent[v] = u;
      depth[v] = depth[u] + 1;
      tree_edge[k] = true;
      queue.push_back(v);
    }
  }
  for (int v = 0; v < n; ++v)
    if (depth[v] < 0)
      throw ValidationError("graph '" + graph.name + "': node " + graph.nodes[v] +
                            " is not connected to start node " + graph.start);

  PathIndependenceReport report;
  for (std::size_t k = 0; k < graph.edges.size(); ++k) {
    if (tree_edge[k]) continue;
    ++report.basis_loops;
    const GraphEdge& e = graph.edges[k];
    const int u = id[e.from], v = id[e.to];
    const Mat2 loop_at_root = frame[v].adjoint() * e.action * frame[u];
    const double deviation = distance_from_identity(loop_at_root);
    if (deviation <= tolerance) continue;

    // Walk from the lowest common ancestor down to u, across the edge, and
    // back up from v.
    std::vector<int> up_u{u}, up_v{v};
    int a = u, b = v;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        a = parent[a];
        up_u.push_back(a);
      } else {
        b = parent[b];
        up_v.push_back(b);
      }
    }
    const int lca = a;
    LoopViolation violation;
    for (auto it = up_u.rbegin(); it != up_u.rend(); ++it) violation.loop.push_back(graph.nodes[*it]);
    for (int w : up_v) violation.loop.push_back(graph.nodes[w]);
    violation.net_action = frame[lca] * loop_at_root * frame[lca].adjoint();
    violation.deviation = deviation;
    report.violations.push_back(std::move(violation));
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace ftsnap
