#include "swfh/corpus.hpp"

#include <memory>

namespace swfh {

namespace {

Complex named(Complex c, const std::string& name)
{
    c.set_name(name);
    return c;
}

}  // namespace

std::vector<Complex> bundled_corpus()
{
    std::vector<Complex> out;
    out.push_back(sphere(0, 0));
    out.push_back(sphere(1, 2));
    out.push_back(sphere(0, 2));
    out.push_back(sphere(2, 1));
    out.push_back(named(wedge(sphere(0, 1), free_summand(2)), "A(0,1)"));
    out.push_back(xab(0, 1, 2, 3));
    out.push_back(xab(0, 1, 2, 5));
    out.push_back(xab(0, 1, 0, 1));
    out.push_back(xab(0, 1, 1, 0));
    out.push_back(xab(1, 1, 3, 2));
    out.push_back(xab(0, 2, 5, 7));
    out.push_back(named(attach_free_cell(sphere(0, 2), {2, {{"y1", 2}}}), "attach(sphere(0,2),2,y1=2)"));
    out.push_back(named(attach_free_cell(xab(0, 1, 2, 3), {2, {{"y1", 1}, {"xf", 2}}}), "attach(xab(0,1,2,3),2,y1=1,xf=2)"));
    out.push_back(smash(xab(0, 1, 2, 3), xab(0, 1, 2, 5)));
    return out;
}

std::vector<NamedMap> bundled_maps()
{
    std::vector<NamedMap> out;
    auto s01 = std::make_shared<const Complex>(sphere(0, 1));
    auto s02 = std::make_shared<const Complex>(sphere(0, 2));
    auto s00 = std::make_shared<const Complex>(sphere(0, 0));
    auto a = std::make_shared<const Complex>(named(wedge(sphere(0, 1), free_summand(2)), "A(0,1)"));
    auto x = std::make_shared<const Complex>(xab(0, 1, 2, 3));

    out.push_back({"identity sphere(0,1)", CochainMap::identity(s01)});
    out.push_back({"identity xab(0,1,2,3)", CochainMap::identity(x)});

    CochainMap proj(s02, s01);
    for (const char* id : {"t", "x1", "y1"})
        proj.set(id, id, 1);
    out.push_back({"sphere(0,2) -> sphere(0,1)", proj});

    // Forgets the attached cell.
    CochainMap forget(x, a);
    for (const auto& g : a->generators())
        forget.set(g.id, g.id, 1);
    out.push_back({"xab(0,1,2,3) -> A(0,1)", forget});

    CochainMap twice(s00, s00);
    twice.set("t", "t", 2);
    out.push_back({"sphere(0,0) degree 2", twice});

    CochainMap zero(s01, s01);
    out.push_back({"zero sphere(0,1)", zero});
    return out;
}

}  // namespace swfh
