#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <doctest.h>

#include "ccpred/chemfeat/descriptors.h"
#include "ccpred/chemfeat/geometry.h"
#include "ccpred/core/error.h"
#include "ccpred/core/rng.h"
#include "ccpred/graphrep/codebook.h"
#include "ccpred/graphrep/conditions.h"
#include "ccpred/graphrep/graph_pair.h"
#include "ccpred/molparse/smiles.h"
#include "corpus.h"

using namespace ccpred;
using namespace ccpred::graph;

namespace {

ExperimentalFeatures conditions(const char *ratio) {
  return make_experimental_features(ColumnSpec::k4g, EluentRatio::parse(ratio),
                                    20.0, LoadingSolvent::kDichloromethane,
                                    0.5);
}

GeoGraphPair pair_for(const mol::MolGraph &m, const char *ratio = "20/1") {
  return build_pair(m, chem::descriptor_vector(m), chem::idealized_geometry(m),
                    conditions(ratio));
}

GeoGraphPair pair_for(const char *smiles, const char *ratio = "20/1") {
  return pair_for(mol::parse_smiles(smiles), ratio);
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("graph sizes") {
  GeoGraphPair ethane = pair_for("CC");
  CHECK(ethane.g.num_nodes() == 2);
  CHECK(ethane.g.num_edges() == 2);
  CHECK(ethane.h.num_nodes() == 1);
  CHECK(ethane.h.num_edges() == 0);

  GeoGraphPair benzene = pair_for("c1ccccc1");
  CHECK(benzene.g.num_nodes() == 6);
  CHECK(benzene.g.num_edges() == 12);
  CHECK(benzene.h.num_nodes() == 6);
  CHECK(benzene.h.num_edges() == 12);

  CHECK(benzene.g.edge_features(0).size() == 15);
  CHECK(benzene.h.edge_features(0).size() == 17);
  CHECK(kGraphGNodeWidth == 9);
  CHECK(kGraphHNodeWidth == 1);
  CHECK(benzene.codebook_version == kCodebookVersion);
}

TEST_CASE("molecules without bonds are rejected") {
  for (const char *smi: { "C", "[Na+].[Cl-]" }) {
    auto m = mol::parse_smiles(smi);
    try {
      pair_for(m);
      FAIL("expected SingleAtomMolecule");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kSingleAtomMolecule);
    }
  }
}

TEST_CASE("geometry from another molecule is rejected") {
  auto m = mol::parse_smiles("CCO");
  auto other = chem::idealized_geometry(mol::parse_smiles("CCCO"));
  try {
    build_pair(m, chem::descriptor_vector(m), other, conditions("1/1"));
    FAIL("expected ShapeMismatch");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kShapeMismatch);
  }
}

TEST_CASE("conditions live only on graph G edges") {
  GeoGraphPair a = pair_for("C=CCOc1ccccc1", "20/1");
  GeoGraphPair b = pair_for("C=CCOc1ccccc1", "50/1");
  CHECK(a.g.node_features == b.g.node_features);
  CHECK(a.g.edge_index == b.g.edge_index);
  CHECK(a.g.edge_bond_codes == b.g.edge_bond_codes);
  CHECK(a.h == b.h);
  CHECK(a.bond_map == b.bond_map);
  CHECK(a.topology_digest() == b.topology_digest());
  CHECK(a.g.conditions != b.g.conditions);
  for (std::size_t e = 0; e < a.g.num_edges(); ++e) {
    auto fa = a.g.edge_features(e), fb = b.g.edge_features(e);
    CHECK(std::equal(fa.begin(), fa.begin() + 3, fb.begin()));
  }
  set_conditions(b, conditions("20/1"));
  CHECK(a == b);
  CHECK(a.topology_digest() != pair_for("C=CCc1ccccc1O").topology_digest());
}

TEST_CASE("graph structure invariants over the corpus") {
  for (const auto &ref: testing::reference_molecules()) {
    CAPTURE(ref.name);
    auto m = mol::parse_smiles(ref.smiles);
    if (m.num_bonds() == 0)
      continue;
    GeoGraphPair p = pair_for(m);
    REQUIRE(p.g.num_edges() == 2 * m.num_bonds());
    REQUIRE(p.h.num_nodes() == m.num_bonds());

    // Directed edges come in reverse pairs.
    std::multiset<std::pair<int, int>> edges(p.g.edge_index.begin(),
                                             p.g.edge_index.end());
    for (auto [u, v]: p.g.edge_index) {
      CHECK(u != v);
      CHECK(edges.count({ v, u }) == 1);
    }

    // bond_map is a bijection onto undirected bonds.
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < p.h.num_nodes(); ++k) {
      int e = p.bond_map[k];
      REQUIRE(e + 1 < static_cast<int>(p.g.num_edges()));
      auto [u, v] = p.g.edge_index[e];
      CHECK(p.g.edge_index[e + 1] == std::pair(v, u));
      CHECK(seen.insert({ std::min(u, v), std::max(u, v) }).second);
    }
    CHECK(seen.size() == m.num_bonds());

    // Each angle edge joins two distinct bonds that share an atom.
    std::size_t expected_angles = 0;
    for (std::size_t i = 0; i < m.num_atoms(); ++i) {
      std::size_t d = m.neighbors(static_cast<int>(i)).size();
      expected_angles += d * (d > 0 ? d - 1 : 0);
    }
    CHECK(p.h.num_edges() == expected_angles);
    for (auto [a, b]: p.h.edge_index) {
      CHECK(a != b);
      auto ea = p.g.edge_index[p.bond_map[a]];
      auto eb = p.g.edge_index[p.bond_map[b]];
      bool share = ea.first == eb.first || ea.first == eb.second
                   || ea.second == eb.first || ea.second == eb.second;
      CHECK(share);
    }
  }
}

TEST_CASE("pairs are invariant under atom relabeling") {
  Rng rng(5);
  for (const auto &ref: testing::reference_molecules()) {
    CAPTURE(ref.name);
    auto m = mol::parse_smiles(ref.smiles);
    if (m.num_bonds() == 0)
      continue;
    GeoGraphPair base = pair_for(m);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> perm(m.num_atoms());
      std::iota(perm.begin(), perm.end(), 0);
      rng.shuffle(perm);
      GeoGraphPair p = pair_for(mol::permute_atoms(m, perm));
      CHECK(p == base);
      CHECK(p.topology_digest() == base.topology_digest());
    }
  }
}

TEST_CASE("atom codes") {
  auto m = mol::parse_smiles("C=CCc1ccccc1O");
  int oxygen = -1;
  for (std::size_t i = 0; i < m.num_atoms(); ++i) {
    if (m.atoms()[i].element == 8)
      oxygen = static_cast<int>(i);
  }
  REQUIRE(oxygen >= 0);
  AtomCodes o = encode_atom(m, oxygen);
  CHECK(o == AtomCodes { 8, 0, 1, 1, 2, 2, 1, 0, 1 });

  AtomCodes c = encode_atom(mol::parse_smiles("c1ccccc1"), 0);
  CHECK(c == AtomCodes { 6, 0, 2, 3, 2, 1, 1, 1, 1 });

  AtomCodes n = encode_atom(mol::parse_smiles("C[N+](C)(C)C"), 1);
  CHECK(n[4] == 3);
  CHECK(n[2] == 4);

  AtomCodes h = encode_atom(mol::parse_smiles("[H]OC"), 1);
  CHECK(h[8] == 1);

  auto codes = encode_bond(mol::parse_smiles("C#N").bonds()[0]);
  CHECK(codes == BondCodes { 0, 2, 0 });
  CHECK(encode_bond(mol::parse_smiles("F/C=C/F").bonds()[0])[0] == 1);

  for (const auto &ref: testing::reference_molecules()) {
    auto mm = mol::parse_smiles(ref.smiles);
    for (std::size_t i = 0; i < mm.num_atoms(); ++i) {
      AtomCodes a = encode_atom(mm, static_cast<int>(i));
      for (std::size_t f = 0; f < kAtomFields; ++f) {
        CHECK(a[f] >= 0);
        CHECK(a[f] < atom_fields()[f].cardinality);
      }
    }
  }
  CHECK(atom_onehot_width() == 55 + 3 + 7 + 8 + 5 + 4 + 5 + 2 + 5);
  CHECK(bond_onehot_width() == 9);
}

TEST_CASE("solvent weighting") {
  SolventRow pe = solvent_weighting(1.0, 0.0);
  SolventRow ea = solvent_weighting(0.0, 1.0);
  CHECK(pe == solvent_row(Solvent::kPetroleumEther));
  CHECK(ea == solvent_row(Solvent::kEthylAcetate));
  SolventRow mid = solvent_weighting(0.5, 0.5);
  for (std::size_t i = 0; i < kSolventFields; ++i)
    CHECK(mid[i] == doctest::Approx((pe[i] + ea[i]) / 2).epsilon(1e-15));

  for (auto [a, b]: { std::pair(0.6, 0.6), std::pair(-0.1, 1.1),
                      std::pair(0.2, 0.2) }) {
    try {
      solvent_weighting(a, b);
      FAIL("expected FractionSumError");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::kFractionSumError);
    }
  }

  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    double ea_frac = i / 100.0;
    double polarity = solvent_weighting(1.0 - ea_frac, ea_frac)[0];
    CHECK(polarity > prev);
    prev = polarity;
  }
}

TEST_CASE("eluent ratios") {
  EluentRatio r = EluentRatio::parse("20/1");
  CHECK(r.pe_fraction() == doctest::Approx(20.0 / 21.0));
  CHECK(r.ea_fraction() == doctest::Approx(1.0 / 21.0));
  CHECK(r.to_string() == "20/1");
  CHECK(EluentRatio::parse(" 1 / 0 ").ea_fraction() == 0.0);
  for (const char *bad: { "20", "a/1", "0/0", "-1/2", "" })
    CHECK_THROWS_AS(EluentRatio::parse(bad), Error);
  ExperimentalFeatures f = conditions("1/1");
  auto flat = f.flatten();
  CHECK(flat[6] == 4.0);
  CHECK(flat[9] == 20.0);
  CHECK(flat[10] == 1.0);
  CHECK(flat[11] == 0.5);
  CHECK(f.core().size() == 9);
}

TEST_CASE("column table") {
  CHECK(recommended_flow_rate(ColumnSpec::k4g) == 10.0);
  CHECK(recommended_flow_rate(ColumnSpec::k8g) == 10.0);
  CHECK(recommended_flow_rate(ColumnSpec::k25g) == 15.0);
  CHECK(recommended_flow_rate(ColumnSpec::k40g) == 30.0);
  CHECK(column_info(ColumnSpec::k8g)[1] == 2 * column_info(ColumnSpec::k4g)[1]);
  for (ColumnSpec c: kAllColumns)
    CHECK(parse_column_spec(to_string(c)) == c);
  CHECK_THROWS_AS(parse_column_spec("12g"), Error);
  CHECK(parse_loading_solvent("DCM") == LoadingSolvent::kDichloromethane);
  CHECK(parse_loading_solvent("1") == LoadingSolvent::kDichloromethane);
  CHECK_THROWS_AS(parse_loading_solvent("MeOH"), Error);
}

TEST_CASE("shipped data files match the built-in tables") {
  std::ostringstream codebook, solvents, columns;
  write_codebook(codebook);
  write_solvent_table(solvents);
  write_column_table(columns);
  CHECK(slurp(std::string(CCPRED_DATA_DIR) + "/codebook.txt") == codebook.str());
  CHECK(slurp(std::string(CCPRED_DATA_DIR) + "/solvents.csv") == solvents.str());
  CHECK(slurp(std::string(CCPRED_DATA_DIR) + "/columns.csv") == columns.str());
}
