#include <gtest/gtest.h>

#include "grope.hpp"
#include "support.hpp"

using namespace grope;
using namespace grope::testing;

namespace {

GroupWord w(const char* text) { return parse_word(text, 3); }

// class 2, genus 1: C on t1, D on t2
CappedGrope class_two(std::vector<Intersection> xs)
{
    CappedGrope cg = cap_all_tips(gr(st({{tip("t1"), tip("t2")}})), 3);
    cg.intersections = std::move(xs);
    return cg;
}

bool fully_split(const CappedGrope& cg)
{
    for (const auto& [cap, classes] : cap_classes(cg))
        if (classes.size() > 1) return false;
    for (const auto& p : stage_paths(cg.body.root))
        if (!p.empty() && stage_at(cg.body.root, p).genus() != 1) return false;
    return true;
}

std::size_t total_caps(const CappedGrope& cg) { return cg.caps.size(); }

} // namespace

TEST(SplitCap, SeparatesTwoElementsAndCopiesDual)
{
    const CappedGrope cg = class_two({ix("i1", cap("c1"), body(), "x1", 3), ix("i2", cap("c1"), body(), "x2", 3),
                                      ix("i3", cap("c2"), body(), "x1", 3)});
    Trace trace;
    const CappedGrope out = split_cap(cg, "c1", {}, &trace);
    EXPECT_EQ(out.body.root.genus(), 2u);
    EXPECT_EQ(class_of(out.body), 2u);
    ASSERT_EQ(out.caps.size(), 4u);
    ASSERT_EQ(tips(out.body).size(), 4u);
    const auto order = caps_in_order(out);
    // pair 0 keeps C' and D, pair 1 holds C'' and the copy of D
    EXPECT_EQ(order[0], "c1");
    EXPECT_EQ(order[1], "c2");
    EXPECT_EQ(cap_labels(out, order[0]), (std::vector<GroupWord>{w("x1")}));
    EXPECT_EQ(cap_labels(out, order[1]), (std::vector<GroupWord>{w("x1")}));
    EXPECT_EQ(cap_labels(out, order[2]), (std::vector<GroupWord>{w("x2")}));
    EXPECT_EQ(cap_labels(out, order[3]), (std::vector<GroupWord>{w("x1")}));
    EXPECT_TRUE(validate(out).empty());
    ASSERT_EQ(trace.size(), 1u);
    EXPECT_EQ(trace[0].op, "split_cap");
    EXPECT_EQ(trace[0].genus_before, 1u);
    EXPECT_EQ(trace[0].genus_after, 2u);
}

TEST(SplitCap, SingleElementIsNoOp)
{
    const CappedGrope cg = class_two({ix("i1", cap("c1"), body(), "x1", 3), ix("i2", cap("c1"), cap("c2"), "x1^-1", 3)});
    EXPECT_EQ(split_cap(cg, "c1"), cg);
}

TEST(SplitCap, PartitionKeepsMultiplicity)
{
    const CappedGrope cg = class_two({ix("i1", cap("c1"), body(), "x1", 3), ix("i2", cap("c1"), body(), "x1", 3),
                                      ix("i3", cap("c1"), body(), "x2", 3)});
    const CappedGrope out = split_cap(cg, "c1");
    const auto order = caps_in_order(out);
    EXPECT_EQ(cap_labels(out, order[0]), (std::vector<GroupWord>{w("x1"), w("x1")}));
    EXPECT_EQ(cap_labels(out, order[2]), (std::vector<GroupWord>{w("x2")}));
}

TEST(SplitCap, LeastClassUsesShortlexAndInverses)
{
    // x2^-1 is the class of x2, which is shortlex-smaller than x1 x2
    const CappedGrope cg = class_two({ix("i1", cap("c1"), body(), "x1 x2", 3), ix("i2", cap("c1"), body(), "x2^-1", 3)});
    const CappedGrope out = split_cap(cg, "c1");
    EXPECT_EQ(cap_labels(out, "c1"), (std::vector<GroupWord>{w("x2^-1")}));
}

TEST(SplitCap, IdentityPointsStayWithLeastClass)
{
    const CappedGrope cg = class_two({ix("i1", cap("c1"), body(), "x1", 3), ix("i2", cap("c1"), body(), "x2", 3),
                                      ix("i3", cap("c1"), body(), "1", 3)});
    const CappedGrope out = split_cap(cg, "c1");
    EXPECT_EQ(cap_labels(out, "c1"), (std::vector<GroupWord>{GroupWord(3), w("x1")}));
}

TEST(SplitCap, CapCapPointWithDualIsCopiedOntoBothDuals)
{
    const CappedGrope cg = class_two({ix("i1", cap("c1"), cap("c2"), "x1", 3), ix("i2", cap("c1"), body(), "x2", 3)});
    const CappedGrope out = split_cap(cg, "c1");
    const auto order = caps_in_order(out);
    // the point on D lands on C' (its class is the least); D and its copy both meet C'
    EXPECT_EQ(cap_labels(out, order[0]), (std::vector<GroupWord>{w("x1"), w("x1")}));
    EXPECT_EQ(cap_labels(out, order[1]), (std::vector<GroupWord>{w("x1^-1")}));
    EXPECT_EQ(cap_labels(out, order[3]), (std::vector<GroupWord>{w("x1^-1")}));
    EXPECT_EQ(cap_labels(out, order[2]), (std::vector<GroupWord>{w("x2")}));
}

TEST(SplitCap, ThirdPartyPointsOnDualAreDuplicated)
{
    // class 2, genus 2: the cap c3 on the second pair meets the dual c2
    CappedGrope cg = cap_all_tips(gr(st({{tip("t1"), tip("t2")}, {tip("t3"), tip("t4")}})), 3);
    cg.intersections = {ix("i1", cap("c1"), body(), "x1", 3), ix("i2", cap("c1"), body(), "x2", 3),
                        ix("i3", cap("c3"), cap("c2"), "x3", 3)};
    const CappedGrope out = split_cap(cg, "c1");
    EXPECT_EQ(cap_labels(out, "c3"), (std::vector<GroupWord>{w("x3"), w("x3")}));
    EXPECT_EQ(out.intersections.size(), 4u);
}

TEST(SplitCap, DualStageRejectedUnlessAllowed)
{
    // t3 is the beta tip whose alpha partner is a stage
    CappedGrope cg = cap_all_tips(gr(st({{child(st({{tip("t1"), tip("t2")}})), tip("t3")}})), 3);
    cg.intersections = {ix("i1", cap("c3"), body(), "x1", 3), ix("i2", cap("c3"), body(), "x2", 3)};
    try {
        split_cap(cg, "c3");
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("dual not a cap"), std::string::npos);
    }
    SplitOptions o;
    o.allow_subtree_dual = true;
    const CappedGrope out = split_cap(cg, "c3", o);
    EXPECT_EQ(out.body.root.genus(), 2u);
    EXPECT_EQ(class_of(out.body), 3u);
    EXPECT_EQ(out.caps.size(), 6u);
    EXPECT_TRUE(validate(out).empty());
}

TEST(SplitCap, UnknownCap) { EXPECT_THROW(split_cap(class_two({}), "c5"), ValidationError); }

TEST(SplitStage, GenusTwoChild)
{
    // first stage genus 1: alpha carries a genus-2 stage, beta the tip-cap T
    CappedGrope cg = cap_all_tips(
        gr(st({{child(st({{tip("t1"), tip("t2")}, {tip("t3"), tip("t4")}})), tip("t5")}})), 3);
    cg.intersections = {ix("i1", cap("c5"), body(), "x1", 3)};
    Trace trace;
    const CappedGrope out = split_stage(cg, {{0, Side::alpha}}, &trace);
    EXPECT_EQ(out.body.root.genus(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        const Pair& p = out.body.root.pairs[i];
        ASSERT_FALSE(is_tip(p.alpha));
        EXPECT_EQ(as_stage(p.alpha).genus(), 1u);
        EXPECT_TRUE(is_tip(p.beta));
    }
    EXPECT_EQ(class_of(out.body), 3u);
    EXPECT_EQ(out.caps.size(), 6u);
    // T was copied together with its intersection
    EXPECT_EQ(out.intersections.size(), 2u);
    EXPECT_TRUE(validate(out).empty());
    ASSERT_EQ(trace.size(), 1u);
    EXPECT_EQ(trace[0].genus_before, 1u);
    EXPECT_EQ(trace[0].genus_after, 2u);
}

TEST(SplitStage, GenusThreeChildAddsTwo)
{
    Stage up = st({{tip("u1"), tip("u2")}, {tip("u3"), tip("u4")}, {tip("u5"), tip("u6")}});
    const CappedGrope cg = cap_all_tips(gr(st({{tip("t1"), child(up)}, {tip("t2"), tip("t3")}})), 2);
    const CappedGrope out = split_stage(cg, {{0, Side::beta}});
    EXPECT_EQ(out.body.root.genus(), 4u);
    EXPECT_EQ(class_of(out.body), class_of(cg.body));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(as_stage(out.body.root.pairs[i].beta).genus(), 1u);
    EXPECT_TRUE(is_tip(out.body.root.pairs[3].beta));
}

TEST(SplitStage, PointsOnLaterPairsFollowTheShift)
{
    Stage up = st({{tip("u1"), tip("u2")}, {tip("u3"), tip("u4")}});
    CappedGrope cg = cap_all_tips(gr(st({{child(up), tip("t1")}, {child(st({{tip("v1"), tip("v2")}})), tip("t2")}})), 2);
    cg.intersections = {ix("i1", cap("c1"), body({{1, Side::alpha}}), "x1", 2),
                        ix("i2", cap("c2"), body({{0, Side::alpha}}), "x2", 2)};
    const CappedGrope out = split_stage(cg, {{0, Side::alpha}});
    EXPECT_EQ(out.intersections[0].end_b, body({{2, Side::alpha}}));
    // points on the cut stage itself go to the first piece
    EXPECT_EQ(out.intersections[1].end_b, body({{0, Side::alpha}}));
    EXPECT_TRUE(validate(out).empty());
}

TEST(SplitStage, GenusOneIsNoOp)
{
    const CappedGrope cg = cap_all_tips(gr(st({{child(st({{tip("t1"), tip("t2")}})), tip("t3")}})), 2);
    EXPECT_EQ(split_stage(cg, {{0, Side::alpha}}), cg);
}

TEST(SplitStage, FirstStageRejected)
{
    const CappedGrope cg = cap_all_tips(gr(st({{tip("t1"), tip("t2")}, {tip("t3"), tip("t4")}})), 2);
    try {
        split_stage(cg, {});
        FAIL() << "expected a precondition error";
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("first stage is not split"), std::string::npos);
    }
}

TEST(FullSplit, ClassTwoWithTwoElementsPerCap)
{
    const CappedGrope out = full_split(uniform_dyadic(left_normed_dyadic(2), 2));
    EXPECT_EQ(out.body.root.genus(), 4u);
    EXPECT_TRUE(fully_split(out));
}

TEST(FullSplit, ClassThreeWithTwoElementsPerCap)
{
    const CappedGrope out = full_split(uniform_dyadic(left_normed_dyadic(3), 2));
    EXPECT_EQ(out.body.root.genus(), 8u);
    EXPECT_EQ(total_caps(out), 24u);
}

TEST(FullSplit, SplitInputIsFixpoint)
{
    const CappedGrope once = full_split(uniform_dyadic(left_normed_dyadic(3), 2));
    Trace trace;
    EXPECT_EQ(full_split(once, {}, &trace), once);
    EXPECT_TRUE(trace.empty());
}

TEST(FullSplit, UniformFamilyGenusIsPower)
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 2; k <= 5; ++k) {
            std::size_t expected = 1;
            for (std::size_t i = 0; i < k; ++i) expected *= n;
            const CappedGrope out = full_split(uniform_dyadic(left_normed_dyadic(k), n));
            EXPECT_EQ(out.body.root.genus(), expected) << "n=" << n << " k=" << k;
            EXPECT_EQ(total_caps(out), expected * k) << "n=" << n << " k=" << k;
            EXPECT_EQ(class_of(out.body), k);
        }
}

TEST(FullSplit, UniformGenusDoesNotDependOnShape)
{
    for (const Grope& shape : all_dyadic(4)) {
        const CappedGrope out = full_split(uniform_dyadic(shape, 2));
        EXPECT_EQ(out.body.root.genus(), 16u);
        EXPECT_EQ(total_caps(out), 64u);
    }
}

TEST(FullSplit, RandomPostconditions)
{
    Rng rng(77);
    for (int i = 0; i < 200; ++i) {
        const CappedGrope cg = random_capped(rng);
        const CappedGrope out = full_split(cg);
        ASSERT_TRUE(validate(out).empty()) << validate(out).front();
        EXPECT_EQ(class_of(out.body), class_of(cg.body));
        EXPECT_TRUE(fully_split(out));
        const LabelClasses before = distinct_labels(cg), after = distinct_labels(out);
        EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    }
}

TEST(FullSplit, GrowthGuard)
{
    SplitOptions o;
    o.max_genus = 100;
    EXPECT_THROW(full_split(uniform_dyadic(left_normed_dyadic(5), 3), o), GrowthLimitExceeded);
    o.max_genus = 243;
    EXPECT_EQ(full_split(uniform_dyadic(left_normed_dyadic(5), 3), o).body.root.genus(), 243u);
    o.max_intersections = 10;
    EXPECT_THROW(full_split(uniform_dyadic(left_normed_dyadic(3), 2), o), GrowthLimitExceeded);
}

TEST(FullSplit, SerializationCommutes)
{
    Rng rng(78);
    for (int i = 0; i < 50; ++i) {
        const CappedGrope cg = random_capped(rng);
        const CappedGrope reread = capped_from_json(parse_json(dump_canonical(to_json(cg))));
        EXPECT_EQ(dump_canonical(to_json(full_split(reread))), dump_canonical(to_json(full_split(cg))));
    }
}
