import pytest

from liamath import environment


@pytest.fixture(autouse=True)
def fresh_context():
    """Isolate every test in its own evaluation context."""
    token = environment._context_var.set(environment.EvalContext())
    yield
    environment._context_var.reset(token)
