"""Elementary systems of first-order ODEs, one expression tree per right hand side."""
from pydantic import BaseModel, ConfigDict, Field, model_validator

from vted.tree import Tree, dump_tree, variables_of


class Equation(BaseModel):
    """`d<lhs>/dt = <rhs>`."""

    model_config = ConfigDict(frozen=True)

    lhs: str
    rhs: Tree

    def __str__(self) -> str:
        """The equation with its right hand side as a tree dump."""
        return f"d{self.lhs}/dt = {dump_tree(self.rhs)}"


class OdeSystem(BaseModel):
    """An ordered list of equations. The left hand sides are the system's variables; every
    variable occurring on a right hand side is one of them.
    """

    model_config = ConfigDict(frozen=True)

    equations: tuple[Equation, ...] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_variables(self) -> "OdeSystem":
        seen: set[str] = set()
        for equation in self.equations:
            if equation.lhs in seen:
                raise ValueError(f"Variable {equation.lhs!r} has two equations.")
            seen.add(equation.lhs)
        for equation in self.equations:
            unknown = variables_of(equation.rhs) - seen
            if unknown:
                raise ValueError(
                    f"Equation for {equation.lhs!r} uses {sorted(unknown)}, which have no equation."
                )
        return self

    @property
    def variables(self) -> tuple[str, ...]:
        """Left hand side symbols in equation order."""
        return tuple(equation.lhs for equation in self.equations)

    @property
    def trees(self) -> tuple[Tree, ...]:
        """Right hand sides in equation order."""
        return tuple(equation.rhs for equation in self.equations)

    def __len__(self) -> int:
        """Number of equations."""
        return len(self.equations)
