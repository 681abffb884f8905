#include "toricdt/geometry.hpp"

#include <gtest/gtest.h>

using namespace toricdt;

namespace {

const std::string data_dir = TORICDT_DATA_DIR;

ToricCY3 conifold_with_v1(const Frame& f)
{
  auto g = builtin("conifold");
  g.vertices[1].frame = f;
  return g;
}

// Follow frames around every compact edge; each vertex frame must equal the
// transport of its neighbour's, up to the recorded flip.
bool transports_close(const ToricCY3& g)
{
  for (const auto& e : g.edges)
    if (transport_frame(g.vertices[e.from].frame, e.axis_from, e.frame, e.axis_to, e.flip) != g.vertices[e.to].frame)
      return false;
  return true;
}

} // namespace

TEST(Builtins, AllValidate)
{
  for (const auto& name : builtin_names()) {
    auto g = builtin(name);
    EXPECT_TRUE(validate(g).ok()) << name;
    EXPECT_TRUE(transports_close(g)) << name;
  }
  EXPECT_THROW(builtin("quintic"), GeometryError);
}

TEST(Builtins, Shapes)
{
  EXPECT_EQ(builtin("c3").edges.size(), 0u);
  EXPECT_EQ(builtin("conifold").edges.size(), 1u);
  const auto p2 = builtin("local_p2");
  EXPECT_EQ(p2.vertices.size(), 3u);
  EXPECT_EQ(p2.edges.size(), 3u);
  for (const auto& e : p2.edges)
    EXPECT_EQ(e.frame, (EdgeFrame{1, -3}));
  const auto p1p1 = builtin("local_p1p1");
  EXPECT_EQ(p1p1.vertices.size(), 4u);
  EXPECT_EQ(p1p1.classes.size(), 2u);
}

TEST(Transport, CycleAroundLocalP2)
{
  // going once round the triangle returns to the identity chart
  const auto g = builtin("local_p2");
  const auto& e01 = g.edges[0];
  const auto& e12 = g.edges[2];
  const Frame f1 = transport_frame(g.vertices[0].frame, e01.axis_from, e01.frame, e01.axis_to, e01.flip);
  const Frame f2 = transport_frame(f1, e12.axis_from, e12.frame, e12.axis_to, e12.flip);
  const auto& e02 = g.edges[1];
  const Frame back = transport_frame(f2, e02.axis_to, reversed_frame(e02), e02.axis_from, e02.flip);
  EXPECT_EQ(back, identity_frame);
}

TEST(Transport, CycleAroundLocalP1P1)
{
  const auto g = builtin("local_p1p1");
  EXPECT_TRUE(transports_close(g));
  const auto& e01 = g.edges[0];
  const auto& e12 = g.edges[2];
  const auto& e32 = g.edges[3];
  const auto& e03 = g.edges[1];
  Frame f = transport_frame(g.vertices[0].frame, e01.axis_from, e01.frame, e01.axis_to, e01.flip);
  f = transport_frame(f, e12.axis_from, e12.frame, e12.axis_to, e12.flip);
  f = transport_frame(f, e32.axis_to, reversed_frame(e32), e32.axis_from, e32.flip);
  f = transport_frame(f, e03.axis_to, reversed_frame(e03), e03.axis_from, e03.flip);
  EXPECT_EQ(f, identity_frame);
}

TEST(Validate, NotUnimodular)
{
  auto g = conifold_with_v1(Frame{{{-2, 0, 0}, {2, 1, 0}, {1, 0, 1}}});
  const auto rep = validate(g);
  EXPECT_TRUE(rep.has(ViolationKind::NotUnimodular));
}

TEST(Validate, ProductCharacter)
{
  auto g = conifold_with_v1(Frame{{{-1, 0, 0}, {1, 1, 0}, {1, 0, 2}}});
  EXPECT_TRUE(validate(g).has(ViolationKind::ProductCharacter));
}

TEST(Validate, CalabiYauDegrees)
{
  auto g = builtin("conifold");
  g.edges[0].frame = {-1, 0};
  EXPECT_TRUE(validate(g).has(ViolationKind::CalabiYau));
}

TEST(Validate, FrameConsistency)
{
  auto g = builtin("conifold");
  g.edges[0].frame = {0, -2};
  EXPECT_TRUE(validate(g).has(ViolationKind::FrameConsistency));
}

TEST(Validate, FlipDetected)
{
  auto g = conifold_with_v1(Frame{{{-1, 0, 0}, {1, 0, 1}, {1, 1, 0}}});
  EXPECT_TRUE(validate(g).ok());
  EXPECT_TRUE(g.edges[0].flip);
}

TEST(Validate, UnknownClassAndDanglingEdge)
{
  auto g = builtin("conifold");
  g.edges[0].curve_class = 3;
  EXPECT_TRUE(validate(g).has(ViolationKind::UnknownClass));
  auto h = builtin("conifold");
  h.vertices[1].incident[0] = kOpenRay;
  EXPECT_TRUE(validate(h).has(ViolationKind::Structure));
}

TEST(Format, RoundTrip)
{
  for (const auto& name : builtin_names()) {
    const auto g = builtin(name);
    EXPECT_EQ(parse_geometry(save(g)), g) << name;
  }
}

TEST(Format, DataFilesMatchBuiltins)
{
  for (const auto& name : builtin_names())
    EXPECT_EQ(load(data_dir + "/" + name + ".json"), builtin(name)) << name;
}

TEST(Format, FlippedFileLoads)
{
  const auto g = load(data_dir + "/local_0_m2_flipped.json");
  EXPECT_TRUE(g.edges[0].flip);
  EXPECT_FALSE(load(data_dir + "/local_0_m2.json").edges[0].flip);
}

TEST(Format, ParseErrorHasLocation)
{
  try {
    parse_geometry("{\n  \"name\": \"x\",\n  \"classes\": [\n}");
    FAIL() << "expected a parse error";
  } catch (const GeometryError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Format, SchemaErrorHasPointer)
{
  try {
    parse_geometry(R"({"classes": [], "vertices": [{"id": "v0", "frame": [[1,0,0],[0,1,0]], "incident": []}], "edges": []})");
    FAIL() << "expected a schema error";
  } catch (const GeometryError& e) {
    EXPECT_NE(std::string(e.what()).find("/vertices/0/frame"), std::string::npos) << e.what();
  }
}

TEST(Format, ResolveRejectsMissingFile)
{
  EXPECT_THROW(resolve_geometry("/nonexistent/geometry.json"), GeometryError);
}
