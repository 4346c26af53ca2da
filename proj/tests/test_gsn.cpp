#include "sace/gsn.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace sace;
using namespace sace::gsn;

namespace {

GsnNode make(const std::string& id, NodeKind kind, const std::string& statement = "claim") {
    GsnNode n;
    n.id = id;
    n.kind = kind;
    n.statement = statement;
    return n;
}

std::vector<std::string> codes(const std::vector<Violation>& violations) {
    std::vector<std::string> out;
    for (const auto& v : violations) out.push_back(v.code);
    return out;
}

}  // namespace

TEST_CASE("a single undeveloped goal is a legal argument") {
    GsnGraph g;
    auto root = make("G1", NodeKind::Goal);
    root.undeveloped = true;
    g.nodes = {root};
    g.root = "G1";
    CHECK(check_wellformed(g).empty());
}

TEST_CASE("a supported-by loop is GSN001") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal), make("S1", NodeKind::Strategy), make("G2", NodeKind::Goal)};
    g.edges = {{"G1", "S1", EdgeKind::SupportedBy},
               {"S1", "G2", EdgeKind::SupportedBy},
               {"G2", "G1", EdgeKind::SupportedBy}};
    g.root = "G1";
    CHECK(codes(check_wellformed(g)) == std::vector<std::string>{"GSN001"});
}

TEST_CASE("goal without support is GSN002") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal)};
    g.root = "G1";
    CHECK(codes(check_wellformed(g)) == std::vector<std::string>{"GSN002"});
}

TEST_CASE("solution with children is GSN003") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal), make("Sn1", NodeKind::Solution), make("Sn2", NodeKind::Solution)};
    g.edges = {{"G1", "Sn1", EdgeKind::SupportedBy}, {"Sn1", "Sn2", EdgeKind::SupportedBy}};
    g.root = "G1";
    auto found = codes(check_wellformed(g));
    CHECK(std::find(found.begin(), found.end(), "GSN003") != found.end());
}

TEST_CASE("unreachable node is GSN004") {
    GsnGraph g;
    auto root = make("G1", NodeKind::Goal);
    root.undeveloped = true;
    auto orphan = make("G2", NodeKind::Goal);
    orphan.undeveloped = true;
    g.nodes = {root, orphan};
    g.root = "G1";
    CHECK(codes(check_wellformed(g)) == std::vector<std::string>{"GSN004"});
}

TEST_CASE("leftover placeholder in an instantiated graph is GSN005") {
    GsnGraph g;
    auto root = make("G1", NodeKind::Goal, "the {Thing} is safe");
    root.undeveloped = true;
    g.nodes = {root};
    g.root = "G1";
    CHECK(codes(check_wellformed(g)) == std::vector<std::string>{"GSN005"});

    // The same statement is fine in a pattern that declares the role.
    std::vector<Role> roles = {{"Thing", RoleType::Text}};
    CHECK(check_wellformed(g, &roles).empty());
}

TEST_CASE("bad edge target kinds are GSN006") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal), make("C1", NodeKind::Context)};
    g.edges = {{"G1", "C1", EdgeKind::SupportedBy}};
    g.root = "G1";
    auto found = codes(check_wellformed(g));
    CHECK(std::find(found.begin(), found.end(), "GSN006") != found.end());
}

TEST_CASE("dot export of a single goal") {
    GsnGraph g;
    auto root = make("G1", NodeKind::Goal, "the system is safe");
    root.undeveloped = true;
    g.nodes = {root};
    g.root = "G1";
    std::string dot = to_dot(g, "tiny");
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("\"G1\"") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("dot export counts nodes and edges and marks ACPs") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal), make("Sn1", NodeKind::Solution), make("C1", NodeKind::Context)};
    g.edges = {{"G1", "Sn1", EdgeKind::SupportedBy}, {"G1", "C1", EdgeKind::InContextOf, "ACP-x"}};
    g.root = "G1";
    std::string dot = to_dot(g);
    std::size_t arrows = 0;
    for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; pos += 2) ++arrows;
    CHECK(arrows == 2);
    CHECK(dot.find("ACP-x") != std::string::npos);
    CHECK(dot.find("arrowtail=box") != std::string::npos);
    CHECK(dot.find("parallelogram") == std::string::npos);
}

TEST_CASE("dot export refuses ill-formed graphs") {
    GsnGraph g;
    g.nodes = {make("G1", NodeKind::Goal)};
    g.root = "G1";
    CHECK_THROWS_AS(to_dot(g), SaceError);
}

TEST_CASE("attach_confidence merges at the ACP") {
    GsnGraph host;
    host.nodes = {make("G1", NodeKind::Goal), make("C1", NodeKind::Context), make("Sn0", NodeKind::Solution)};
    host.edges = {{"G1", "C1", EdgeKind::InContextOf, "ACP-ctx"}, {"G1", "Sn0", EdgeKind::SupportedBy}};
    host.root = "G1";
    REQUIRE(check_wellformed(host).empty());

    GsnGraph confidence;
    confidence.nodes = {make("GC", NodeKind::Goal), make("SnC", NodeKind::Solution)};
    confidence.edges = {{"GC", "SnC", EdgeKind::SupportedBy}};
    confidence.root = "GC";

    auto merged = attach_confidence(host, "ACP-ctx", confidence);
    CHECK(merged.nodes.size() == 5);
    CHECK(check_wellformed(merged).empty());
    bool satisfied = false;
    for (const auto& edge : merged.edges) {
        if (edge.acp == "ACP-ctx") satisfied = edge.acp_satisfied;
    }
    CHECK(satisfied);

    SECTION("second attachment fails") {
        CHECK_THROWS_AS(attach_confidence(merged, "ACP-ctx", confidence), SaceError);
    }
    SECTION("unknown label fails") {
        CHECK_THROWS_AS(attach_confidence(host, "ACP-missing", confidence), SaceError);
    }
}

TEST_CASE("attach_confidence merges a same-id root into the host node") {
    GsnGraph host;
    auto g7 = make("G7", NodeKind::Goal);
    g7.undeveloped = true;
    host.nodes = {g7, make("C1", NodeKind::Context)};
    host.edges = {{"G7", "C1", EdgeKind::InContextOf, "ACP-out"}};
    host.root = "G7";

    GsnGraph confidence;
    confidence.nodes = {make("G7", NodeKind::Goal), make("Sn1", NodeKind::Solution)};
    confidence.edges = {{"G7", "Sn1", EdgeKind::SupportedBy}};
    confidence.root = "G7";

    auto merged = attach_confidence(host, "ACP-out", confidence);
    CHECK(merged.nodes.size() == 3);  // G7 merged, not duplicated
    CHECK_FALSE(merged.find("G7")->undeveloped);
    CHECK(check_wellformed(merged).empty());
}

TEST_CASE("duplicate ACP labels are rejected") {
    GsnGraph host;
    auto root = make("G1", NodeKind::Goal);
    root.undeveloped = true;
    host.nodes = {root, make("C1", NodeKind::Context), make("C2", NodeKind::Context)};
    host.edges = {{"G1", "C1", EdgeKind::InContextOf, "ACP-dup"},
                  {"G1", "C2", EdgeKind::InContextOf, "ACP-dup"}};
    host.root = "G1";
    GsnGraph confidence;
    auto gc = make("GC", NodeKind::Goal);
    gc.undeveloped = true;
    confidence.nodes = {gc};
    confidence.root = "GC";
    CHECK_THROWS_AS(attach_confidence(host, "ACP-dup", confidence), SaceError);
}

TEST_CASE("interchange round-trip preserves structure") {
    GsnGraph g;
    auto goal = make("G1", NodeKind::Goal, "claim with \"quotes\"");
    auto solution = make("Sn1", NodeKind::Solution);
    solution.artifact = "TT";
    solution.artifact_checksum = "00ff";
    g.nodes = {goal, solution, make("J1", NodeKind::Justification)};
    g.edges = {{"G1", "Sn1", EdgeKind::SupportedBy}, {"G1", "J1", EdgeKind::InContextOf, "ACP-j", true}};
    g.root = "G1";

    auto restored = graph_from_json(graph_to_json(g));
    REQUIRE(restored.nodes.size() == g.nodes.size());
    REQUIRE(restored.edges.size() == g.edges.size());
    CHECK(restored.root == "G1");
    CHECK(restored.find("Sn1")->artifact == "TT");
    CHECK(restored.find("Sn1")->artifact_checksum == "00ff");
    CHECK(restored.edges[1].acp == "ACP-j");
    CHECK(restored.edges[1].acp_satisfied);
    CHECK(restored.find("G1")->statement == "claim with \"quotes\"");
}
