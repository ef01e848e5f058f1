// Generated by `halinstar regen-tables`. Do not edit by hand.
#ifndef HALINSTAR_TABLES_HPP
#define HALINSTAR_TABLES_HPP

#include <array>
#include <string_view>

namespace halinstar::tables {

struct BaseColoringEntry {
    int size;                // level count or spine length
    std::string_view sides;  // caterpillar side flags, empty for complete graphs
    int k;
    std::string_view colors;  // one digit per edge, in generator edge order
};

struct TemplateEntry {
    std::string_view key;
    std::string_view colors;   // restored edges uv uu1 uu2 u1u2 u1x1 u2y1 vy1 y1y2
    std::string_view recolor;  // pairs of (edge tag, color): V=wv, W=wx1, X=x1x2
};

inline constexpr std::array<BaseColoringEntry, 3> kCompleteBase{{
    {1, "", 5, "123354"},
    {2, "", 5, "123243414515253"},
    {3, "", 5, "123233445344514121212512325354341"},
}};

inline constexpr std::array<BaseColoringEntry, 16> kCaterpillarBase{{
    {1, "", 5, "123354"},
    {2, "", 6, "122334645"},
    {3, "L", 5, "122334345125"},
    {3, "R", 5, "122533331454"},
    {4, "LL", 5, "123245413313245"},
    {4, "LR", 5, "123242153315415"},
    {4, "RL", 5, "123252143314354"},
    {4, "RR", 5, "124235533421245"},
    {5, "LLL", 5, "124223333134515425"},
    {5, "LLR", 5, "124223353134512425"},
    {5, "LRL", 5, "123423115434523125"},
    {5, "LRR", 5, "123123245434513125"},
    {5, "RLL", 5, "123125452333123454"},
    {5, "RLR", 5, "123425251333132454"},
    {5, "RRL", 5, "125221343333521454"},
    {5, "RRR", 5, "125221333333541454"},
}};

inline constexpr std::array<TemplateEntry, 26> kExtensionTemplates{{
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=23 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=25 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=34 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=43 s0=3 s1=1", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=43 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=53 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=12 lam1=21 lam2=54 s0=3 s1=4", "23512243", ""},
    {"t1=4 mu1p=4 mu2=21 lam1=21 lam2=43 s0=3 s1=1", "23512243", ""},
    {"t1=4 mu1p=4 mu2=23 lam1=24 lam2=23 s0=3 s1=1", "24513231", ""},
    {"t1=4 mu1p=4 mu2=31 lam1=21 lam2=43 s0=3 s1=1", "24513432", ""},
    {"t1=4 mu1p=4 mu2=32 lam1=21 lam2=43 s0=3 s1=1", "24513231", ""},
    {"t1=4 mu1p=4 mu2=52 lam1=21 lam2=43 s0=3 s1=1", "23512243", ""},
    {"t1=5 mu1p=5 mu2=12 lam1=21 lam2=25 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=12 lam1=21 lam2=35 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=12 lam1=21 lam2=53 s0=3 s1=1", "23412253", ""},
    {"t1=5 mu1p=5 mu2=12 lam1=21 lam2=53 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=13 lam1=21 lam2=54 s0=3 s1=1", "24513231", ""},
    {"t1=5 mu1p=5 mu2=14 lam1=21 lam2=23 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=14 lam1=21 lam2=52 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=21 lam1=15 lam2=23 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=21 lam1=15 lam2=32 s0=3 s1=5", "23412253", ""},
    {"t1=5 mu1p=5 mu2=21 lam1=21 lam2=53 s0=3 s1=1", "23412253", ""},
    {"t1=5 mu1p=5 mu2=32 lam1=21 lam2=54 s0=3 s1=1", "24513231", ""},
    {"t1=5 mu1p=5 mu2=34 lam1=21 lam2=53 s0=3 s1=1", "24513231", ""},
    {"t1=5 mu1p=5 mu2=41 lam1=21 lam2=53 s0=3 s1=1", "23412253", ""},
    {"t1=5 mu1p=5 mu2=42 lam1=21 lam2=53 s0=3 s1=1", "23412253", ""},
}};

}  // namespace halinstar::tables

#endif  // HALINSTAR_TABLES_HPP
