#include "zarex/record.hpp"

namespace zarex {

std::string bound_name(BoundKind b)
{
    switch (b) {
    case BoundKind::exact: return "exact";
    case BoundKind::lower: return "lower";
    case BoundKind::upper: return "upper";
    }
    return "exact";
}

std::string relation_symbol(Relation r)
{
    switch (r) {
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
    case Relation::eq: return "=";
    }
    return "<=";
}

namespace {

bool holds(const Rat& a, Relation r, const Rat& b)
{
    switch (r) {
    case Relation::le: return a <= b;
    case Relation::ge: return a >= b;
    case Relation::eq: return a == b;
    }
    return false;
}

}  // namespace

bool CheckReport::pass() const
{
    if (mid) return holds(lhs, relation, *mid) && holds(*mid, relation, rhs);
    return holds(lhs, relation, rhs);
}

}  // namespace zarex
