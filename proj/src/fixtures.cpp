#include "tropmarg/fixtures.hpp"

#include <stdexcept>

namespace tropmarg::fixtures {

Matrix mp(std::initializer_list<std::initializer_list<Scalar>> rows) {
  return Matrix(SemiringKind::min_plus, rows);
}

namespace {

MarginalSet make_set(WordTemplate word, std::vector<Tuple> tuples) {
  MarginalSet set(std::move(word));
  for (Tuple& t : tuples) set.insert(std::move(t));
  return set;
}

family::PolyOf poly_family(const Matrix& base) { return {base, 2, {-100, 100}}; }

PolySecret poly_secret(std::vector<std::int64_t> coeffs, const Matrix& base, Matrix reference) {
  return {std::move(coeffs), base, std::move(reference)};
}

}  // namespace

ResiduationExample residuation() {
  return {
      mp({{0, 85, -6}, {-72, 53, -97}, {-72, 52, -69}}),
      mp({{0, 125, 3}, {-85, 0, -91}, {25, 150, 0}}),
      100,
      mp({{0, 125, 100}, {100, 0, 100}, {100, 150, 0}}),
      {mp({{0, 125, 65}, {29, 0, -51}, {61, 150, 0}}),
       mp({{0, 125, 14}, {29, 0, -91}, {88, 150, 0}}),
       mp({{0, 125, 76}, {20, 0, -68}, {71, 150, 0}})},
  };
}

DefinitionExample definition() {
  return {
      mp({{3, 7, 4}, {5, 12, 7}, {6, 5, 11}}),
      {mp({{0, 7, 5}, {1, 0, 6}, {-1, 5, 0}}), mp({{0, 7, 5}, {1, 0, 6}, {0, 5, 0}})},
      mp({{5, 12, 10}, {25, 12, 8}, {59, 23, 12}}),
  };
}

BilinearExample bilinear() {
  // Reference order: x_11, x_12, x_21, x_22 against y_11, y_12, y_21, y_22.
  const std::int64_t bounds[16] = {0, -1, 1, 0, 2, 1, -2, -3, -2, 2, -1, 3, 0, 4, -4, 0};
  const bool equal[16] = {true,  false, false, true,  false, false, false, false,
                          false, false, false, false, true,  false, false, true};
  BilinearExample out{mp({{3, 2}, {1, 5}}), {}, mp({{3, 9}, {7, 3}}), mp({{-3, 4}, {0, -3}})};
  for (std::size_t k = 0; k < 16; ++k) {
    const std::size_t x = k / 4;
    const std::size_t y = k % 4;
    out.constraints.push_back({x / 2, x % 2, y / 2, y % 2, bounds[k], equal[k]});
  }
  return out;
}

FiveFactorExample five_factor() {
  return {
      mp({{-4, 6, 2}, {-2, -3, 10}, {-2, -9, -5}}),
      mp({{-4, -10, -3}, {2, -2, 8}, {4, -1, 6}}),
      mp({{-9, 9, -2}, {5, -2, -8}, {3, 3, 8}}),
      {{0, -6, -11, -6, -12, -17, -8, -14, -19},
       {6, 0, -5, -2, -8, -13, -3, -9, -14},
       {-1, -7, -12, -12, -18, -23, -10, -16, -21},
       {6, 1, -4, 0, -5, -10, -2, -7, -12},
       {12, 7, 2, 4, -1, -6, 3, -2, -7},
       {5, 0, -5, -6, -11, -16, -4, -9, -14},
       {2, -3, -8, -4, -9, -14, -6, -11, -16},
       {8, 3, -2, 0, -5, -10, -1, -6, -11},
       {1, -4, -9, -10, -15, -20, -8, -13, -18}},
      {{0, 0}, {0, 1}, {1, 0}},
      {0, 1},
      {0, 1},
      mp({{-10, -4, -1}, {1, -10, 0}, {6, -1, -2}}),
      mp({{10, 10, 3}, {16, 10, 5}, {9, 3, 0}}),
  };
}

IntervalExample interval_encoding() {
  IntervalExample out;
  for (int b = 4; b <= 5; ++b)
    for (int a = 3; a <= 7; ++a) out.matrices.push_back(mp({{2, a}, {b, 5}}));
  out.encoded = "[[2,[3,7]],[[4,5],5]]";
  return out;
}

DeltaExample delta_encoding() {
  return {
      {mp({{2, 3, 4}, {4, 5, 1}, {0, 8, 6}}), mp({{2, 3, 7}, {4, 5, 1}, {0, 8, 6}}),
       mp({{2, 3, 8}, {4, 5, 2}, {0, 8, 6}})},
      R"({"base":[[2,3,4],[4,5,1],[0,8,6]],"diffs":[[[[1,3],7]],[[[1,3],8],[[2,3],2]]]})",
  };
}

// ---------------------------------------------------------------------------

ProtocolExample one_sided_3x3() {
  const Matrix a = mp({{54, 15, 33}, {59, 87, 53}, {9, 63, 80}});
  const Matrix b = mp({{50, 11, 14}, {16, 29, 33}, {27, 86, 96}});
  const Matrix w = mp({{54, -67, 35}, {23, -7, -84}, {9, 97, 33}});

  const Matrix p1 = mp({{-69, -82, -64}, {-38, -69, -44}, {-88, -34, -69}});
  const Matrix q1 = mp({{-43, -82, -79}, {-77, -64, -60}, {-66, -7, 3}});
  const Matrix p2 = mp({{-46, -19, -20}, {-26, -14, 4}, {-25, -64, -46}});
  const Matrix q2 = mp({{-33, -1, 3}, {4, -33, -11}, {36, -3, -33}});

  ProtocolExample ex;
  ex.name = "one-sided-3x3";
  ex.kind = ProtocolKind::one_sided;
  ex.params.kind = SemiringKind::min_plus;
  ex.params.dim = 3;
  ex.params.blocks.push_back(Block{w, poly_family(a), poly_family(b)});
  ex.params.sampler.count = 3;

  ex.alice.p = {p1};
  ex.alice.q = {q1};
  ex.alice.sets = {
      make_set(WordTemplate::right(p1),
               {{mp({{0, 63, 29}, {64, 0, 133}, {131, 66, 0}})},
                {mp({{0, 103, 134}, {33, 0, 134}, {27, 46, 0}})},
                {mp({{0, 142, 99}, {74, 0, 43}, {112, 142, 0}})}}),
      make_set(WordTemplate::left(q1),
               {{mp({{0, 54, 149}, {38, 0, -6}, {97, 96, 0}})},
                {mp({{0, 44, 97}, {38, 0, 33}, {99, 144, 0}})},
                {mp({{0, 71, 91}, {21, 0, 77}, {141, 147, 0}})}}),
  };
  ex.alice.choices = {2, 2};

  ex.bob.p = {p2};
  ex.bob.q = {q2};
  ex.bob.sets = {
      make_set(WordTemplate::right(p2),
               {{mp({{0, 70, 95}, {92, 0, 29}, {54, 113, 0}})},
                {mp({{0, 52, 105}, {110, 0, 30}, {117, 133, 0}})},
                {mp({{0, 70, 61}, {119, 0, 20}, {84, 84, 0}})}}),
      make_set(WordTemplate::left(q2),
               {{mp({{0, 85, 60}, {60, 0, 102}, {115, 116, 0}})},
                {mp({{0, 87, 48}, {100, 0, 129}, {100, 121, 0}})},
                {mp({{0, 150, 67}, {42, 0, 115}, {107, 142, 0}})}}),
  };
  ex.bob.choices = {1, 1};

  ex.poly_secrets = {poly_secret({-69, -97, 60}, a, p1), poly_secret({8, -93, 69}, b, q1),
                     poly_secret({-11, 2, -88}, a, p2), poly_secret({-33, 37, -41}, b, q2)};
  return ex;
}

ProtocolExample sandwich_4x4() {
  const Matrix a = mp({{34, 30, 9, 36}, {91, 83, 99, 57}, {42, 72, 80, 42}, {22, 62, 67, 16}});
  const Matrix b = mp({{20, 32, 55, 1}, {39, 66, 67, 5}, {95, 64, 36, 95}, {78, 91, 1, 30}});
  const Matrix w = mp({{-2, -8, -10, 4}, {6, 4, 2, 7}, {-8, -2, -5, -7}, {-8, 10, 0, 5}});

  const Matrix p1 = mp({{45, 75, 54, 62}, {90, 45, 111, 84}, {75, 83, 45, 69}, {49, 63, 42, 43}});
  const Matrix q1 = mp({{44, 56, 6, 25}, {63, 75, 10, 31}, {107, 90, 62, 73}, {100, 69, 27, 56}});
  const Matrix p2 =
      mp({{78, 98, 77, 104}, {159, 78, 167, 125}, {110, 140, 78, 110}, {90, 130, 111, 78}});
  const Matrix q2 = mp({{44, 56, 19, 25}, {63, 45, 23, 29}, {119, 88, 45, 86}, {102, 82, 25, 45}});

  ProtocolExample ex;
  ex.name = "sandwich-4x4";
  ex.kind = ProtocolKind::sandwich;
  ex.params.kind = SemiringKind::min_plus;
  ex.params.dim = 4;
  ex.params.blocks.push_back(Block{w, poly_family(a), poly_family(b)});
  ex.params.sampler.count = 2;

  ex.alice.p = {p1};
  ex.alice.q = {q1};
  ex.alice.sets = {make_set(
      WordTemplate::five_factor(p1, w, q1),
      {{mp({{-25, 63, 12, 37}, {65, -25, 11, -11}, {-29, -39, -25, -25}, {-12, -40, 79, -26}}),
        mp({{25, 21, 50, 67}, {31, 25, -1, 18}, {33, 89, 27, 20}, {96, 20, 78, 11}})},
       {mp({{-6, -14, 96, 3}, {16, -6, 8, 69}, {22, 17, -6, 65}, {-11, -3, -7, -7}}),
        mp({{6, 2, 90, -7}, {12, 6, -22, -1}, {14, 8, -20, 52}, {5, 64, 64, 33}})}})};
  ex.alice.choices = {1};

  ex.bob.p = {p2};
  ex.bob.q = {q2};
  ex.bob.sets = {make_set(
      WordTemplate::five_factor(p2, w, q2),
      {{mp({{59, 69, 58, 58}, {71, 59, 73, 73}, {65, 84, 59, 59}, {97, 58, 92, 59}}),
        mp({{-59, 39, -59, 1}, {-57, -59, 11, -58}, {9, 5, 5, -61}, {92, -39, -81, 98}})},
       {mp({{-70, -81, 49, -7}, {3, -70, 45, -42}, {43, -42, -70, -62}, {-59, 47, 97, -70}}),
        mp({{70, 81, 44, 64}, {72, 70, 46, 66}, {74, 75, 48, 68}, {69, 75, 85, 63}})}})};
  ex.bob.choices = {0};

  ex.poly_secrets = {poly_secret({45, 98, 11}, a, p1), poly_secret({77, 26, 4}, b, q1),
                     poly_secret({78, 68, 80}, a, p2), poly_secret({45, 24, 17}, b, q2)};
  ex.u = std::vector<Matrix>{
      mp({{83, 95, 45, 64}, {95, 107, 57, 76}, {81, 93, 43, 62}, {78, 90, 40, 59}})};
  ex.v = std::vector<Matrix>{
      mp({{113, 110, 81, 94}, {128, 125, 96, 109}, {114, 111, 82, 95}, {113, 110, 81, 94}})};
  ex.key =
      mp({{202, 208, 164, 183}, {217, 223, 179, 198}, {203, 209, 165, 184}, {200, 206, 162, 181}});
  return ex;
}

ProtocolExample multiblock_3x3() {
  const Matrix w1 = mp({{80, 7, 64}, {46, 57, 15}, {21, 36, 7}});
  const Matrix w2 = mp({{5, 3, 68}, {95, 89, 34}, {99, 21, 86}});

  const Matrix p11 = mp({{-15, 126, 166}, {124, -15, 164}, {153, 142, -15}});
  const Matrix q11 = mp({{-39, 99, 153}, {97, -39, 96}, {101, 136, -39}});
  const Matrix p12 = mp({{-3, 61, 33}, {33, -3, 36}, {51, 45, -3}});
  const Matrix q12 = mp({{-64, 93, 123}, {95, -64, 68}, {66, 101, -64}});
  const Matrix p21 = mp({{-77, 12, 14}, {14, -77, 19}, {16, 13, -77}});
  const Matrix q21 = mp({{-82, 19, 20}, {18, -82, 19}, {12, 16, -82}});
  const Matrix p22 = mp({{-68, 42, 43}, {39, -68, 45}, {47, 37, -68}});
  const Matrix q22 = mp({{-8, 26, 38}, {37, -8, 34}, {32, 27, -8}});

  ProtocolExample ex;
  ex.name = "multiblock-3x3";
  ex.kind = ProtocolKind::multiblock;
  ex.params.kind = SemiringKind::min_plus;
  ex.params.dim = 3;
  // Each reference secret has its own diagonal and range; the families are nominal.
  const family::LindeDeLaPuente ldp{3, 20, -20};
  ex.params.blocks.push_back(Block{w1, ldp, ldp});
  ex.params.blocks.push_back(Block{w2, ldp, ldp});
  ex.params.sampler.count = 2;

  ex.alice.p = {p11, p12};
  ex.alice.q = {q11, q12};
  ex.alice.sets = {
      make_set(WordTemplate::right(p11), {{mp({{0, 169, 181}, {184, 0, 200}, {188, 194, 0}})},
                                          {mp({{0, 195, 187}, {142, 0, 184}, {192, 191, 0}})}}),
      make_set(WordTemplate::sandwich(mat_mul(q11, p12)),
               {{mp({{20, 84, 56}, {56, 20, 59}, {74, 77, 20}}),
                 mp({{-20, 47, 33}, {16, -20, 19}, {49, 28, -20}})},
                {mp({{7, 76, 43}, {43, 7, 46}, {74, 55, 7}}),
                 mp({{-7, 57, 29}, {56, -7, 32}, {47, 41, -7}})}}),
      make_set(WordTemplate::left(q12), {{mp({{0, 183, 189}, {198, 0, 180}, {170, 173, 0}})},
                                         {mp({{0, 169, 193}, {178, 0, 168}, {199, 184, 0}})}}),
  };
  ex.alice.choices = {1, 1, 0};

  ex.bob.p = {p21, p22};
  ex.bob.q = {q21, q22};
  ex.bob.sets = {
      make_set(WordTemplate::right(p21), {{mp({{0, 109, 118}, {113, 0, 195}, {138, 186, 0}})},
                                          {mp({{0, 174, 103}, {178, 0, 103}, {106, 91, 0}})}}),
      make_set(WordTemplate::sandwich(mat_mul(q21, p22)),
               {{mp({{-17, 84, 85}, {83, -17, 84}, {77, 81, -17}}),
                 mp({{17, 118, 119}, {117, 17, 118}, {111, 115, 17}})},
                {mp({{39, 140, 141}, {139, 39, 140}, {133, 137, 39}}),
                 mp({{-39, 62, 63}, {61, -39, 62}, {55, 59, -39}})}}),
      make_set(WordTemplate::left(q22), {{mp({{0, 194, 167}, {171, 0, 49}, {78, 139, 0}})},
                                         {mp({{0, 154, 175}, {102, 0, 102}, {133, 43, 0}})}}),
  };
  ex.bob.choices = {1, 1, 0};

  ex.u = std::vector<Matrix>{mp({{65, -8, 49}, {31, 42, 0}, {6, 21, -8}}),
                             mp({{-101, -103, -54}, {-65, -67, -72}, {-47, -85, -36}})};
  ex.v = std::vector<Matrix>{mp({{-109, -145, -106}, {-106, -95, -137}, {-131, -116, -145}}),
                             mp({{-78, -80, -38}, {-15, -23, -49}, {-24, -62, -20}})};
  ex.key = mp({{-308, -310, -315}, {-305, -320, -278}, {-330, -332, -290}});
  return ex;
}

std::vector<std::string> protocol_example_names() {
  return {"one-sided-3x3", "sandwich-4x4", "multiblock-3x3"};
}

ProtocolExample protocol_example(std::string_view name) {
  if (name == "one-sided-3x3") return one_sided_3x3();
  if (name == "sandwich-4x4") return sandwich_4x4();
  if (name == "multiblock-3x3") return multiblock_3x3();
  throw std::invalid_argument("unknown fixture: " + std::string(name));
}

}  // namespace tropmarg::fixtures
