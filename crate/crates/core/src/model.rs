//! Core domain types: attributes, examples, datasets, rules, and theories,
//! plus the coverage and classification primitives every learner builds on.
//!
//! All types are immutable after construction and all operations are pure, so
//! they may be evaluated concurrently over shared data.

use crate::error::{Error, Result};

/// Characters that would break the on-disk dataset format if they appeared in
/// a name or symbolic value token.
const RESERVED_CHARS: &[char] = &[',', ':', '(', ')', '|', '\n', '\r'];

fn check_token(token: &str, what: &str) -> Result<()> {
    if token.is_empty() {
        return Err(Error::InvalidDataset(format!("{what} must not be empty")));
    }
    if token == "?" {
        return Err(Error::InvalidDataset(format!(
            "{what} must not be the missing-value marker \"?\""
        )));
    }
    if token.contains(RESERVED_CHARS) {
        return Err(Error::InvalidDataset(format!(
            "{what} {token:?} contains a reserved character (one of , : ( ) | or a line break)"
        )));
    }
    Ok(())
}

/// The kind of an attribute: a finite symbolic domain or an ordered real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttributeKind {
    Symbolic { values: Vec<String> },
    Numeric,
}

/// One column of a dataset schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
}

impl Attribute {
    /// A symbolic attribute over the given declared values (declaration order
    /// is preserved and meaningful: candidate conditions enumerate it).
    pub fn symbolic(name: impl Into<String>, values: Vec<String>) -> Result<Self> {
        let name = name.into();
        check_token(&name, "attribute name")?;
        if values.is_empty() {
            return Err(Error::InvalidDataset(format!(
                "symbolic attribute {name:?} declares no values"
            )));
        }
        for (i, v) in values.iter().enumerate() {
            check_token(v, "symbolic value")?;
            if values[..i].contains(v) {
                return Err(Error::InvalidDataset(format!(
                    "symbolic attribute {name:?} declares duplicate value {v:?}"
                )));
            }
        }
        Ok(Attribute {
            name,
            kind: AttributeKind::Symbolic { values },
        })
    }

    pub fn numeric(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_token(&name, "attribute name")?;
        Ok(Attribute {
            name,
            kind: AttributeKind::Numeric,
        })
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, AttributeKind::Numeric)
    }

    /// Declared values of a symbolic attribute, `None` for numeric ones.
    pub fn symbolic_values(&self) -> Option<&[String]> {
        match &self.kind {
            AttributeKind::Symbolic { values } => Some(values),
            AttributeKind::Numeric => None,
        }
    }
}

/// An ordered attribute list with unique names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    attributes: Vec<Attribute>,
}

impl Schema {
    pub fn new(attributes: Vec<Attribute>) -> Result<Self> {
        for (i, a) in attributes.iter().enumerate() {
            if a.name == "class" {
                return Err(Error::InvalidDataset(
                    "attribute name \"class\" is reserved for the label column".into(),
                ));
            }
            if attributes[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::InvalidDataset(format!(
                    "duplicate attribute name {:?}",
                    a.name
                )));
            }
        }
        Ok(Schema { attributes })
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn attribute(&self, index: usize) -> &Attribute {
        &self.attributes[index]
    }
}

/// A single cell: either an index into the attribute's declared values or a
/// real number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Symbolic(u32),
    Numeric(f64),
}

/// Binary class label. Theories predict `Positive` for covered examples and
/// `Negative` for everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }
}

/// One labeled example. Field order follows the owning schema.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub values: Vec<Value>,
    pub label: Label,
}

impl Example {
    pub fn new(values: Vec<Value>, label: Label) -> Self {
        Example { values, label }
    }
}

/// A schema plus an ordered example collection.
///
/// Example identity is positional: index `i` refers to `examples()[i]`, and
/// duplicated feature vectors remain distinct examples. The order is stable,
/// which all seeded sampling depends on. Missing values do not exist in this
/// representation; loaders reject them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    schema: Schema,
    /// `[positive, negative]` class names.
    class_names: [String; 2],
    examples: Vec<Example>,
}

impl Dataset {
    pub fn new(schema: Schema, class_names: [String; 2], examples: Vec<Example>) -> Result<Self> {
        check_token(&class_names[0], "class name")?;
        check_token(&class_names[1], "class name")?;
        if class_names[0] == class_names[1] {
            return Err(Error::InvalidDataset(format!(
                "the two class names must differ, got {:?} twice",
                class_names[0]
            )));
        }
        for (i, ex) in examples.iter().enumerate() {
            Self::check_example(&schema, ex).map_err(|e| {
                Error::InvalidDataset(format!("example {i}: {e}"))
            })?;
        }
        Ok(Dataset {
            schema,
            class_names,
            examples,
        })
    }

    fn check_example(schema: &Schema, ex: &Example) -> std::result::Result<(), String> {
        if ex.values.len() != schema.len() {
            return Err(format!(
                "has {} values but the schema declares {} attributes",
                ex.values.len(),
                schema.len()
            ));
        }
        for (a, value) in schema.attributes().iter().zip(&ex.values) {
            match (&a.kind, value) {
                (AttributeKind::Symbolic { values }, Value::Symbolic(idx)) => {
                    if *idx as usize >= values.len() {
                        return Err(format!(
                            "symbolic value index {idx} out of range for attribute {:?}",
                            a.name
                        ));
                    }
                }
                (AttributeKind::Numeric, Value::Numeric(_)) => {}
                _ => {
                    return Err(format!(
                        "value kind does not match attribute {:?}",
                        a.name
                    ))
                }
            }
        }
        Ok(())
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    /// `[positive, negative]` class names, in that order.
    pub fn class_names(&self) -> &[String; 2] {
        &self.class_names
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn example(&self, index: usize) -> &Example {
        &self.examples[index]
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Indices of all examples, in order.
    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.examples.len()).collect()
    }

    /// Indices of the positive examples, in order.
    pub fn positive_indices(&self) -> Vec<usize> {
        (0..self.examples.len())
            .filter(|&i| self.examples[i].label.is_positive())
            .collect()
    }

    /// Indices of the negative examples, in order.
    pub fn negative_indices(&self) -> Vec<usize> {
        (0..self.examples.len())
            .filter(|&i| !self.examples[i].label.is_positive())
            .collect()
    }

    /// Majority-class proportion over the given examples (the accuracy of
    /// always predicting the majority class).
    ///
    /// Panics if `indices` is empty.
    pub fn default_accuracy(&self, indices: &[usize]) -> f64 {
        assert!(!indices.is_empty(), "default accuracy of an empty collection");
        let pos = indices
            .iter()
            .filter(|&&i| self.examples[i].label.is_positive())
            .count();
        let n = indices.len();
        (pos.max(n - pos)) as f64 / n as f64
    }

    /// A new dataset holding clones of the selected examples, in the given
    /// index order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            class_names: self.class_names.clone(),
            examples: indices.iter().map(|&i| self.examples[i].clone()).collect(),
        }
    }
}

/// The test part of a condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConditionTest {
    /// Symbolic attribute equals the declared value at this index.
    Equals(u32),
    /// Numeric attribute ≤ threshold.
    LessOrEqual(f64),
    /// Numeric attribute > threshold.
    Greater(f64),
}

/// One attribute test. Threshold tests apply to numeric attributes only and
/// equality tests to symbolic ones; mismatches are programming errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Condition {
    pub attribute: usize,
    pub test: ConditionTest,
}

impl Condition {
    /// Whether the example satisfies this condition.
    ///
    /// Panics if the example does not conform to the rule's schema (wrong
    /// value kind or attribute index out of range).
    pub fn holds(&self, example: &Example) -> bool {
        match (self.test, example.values[self.attribute]) {
            (ConditionTest::Equals(v), Value::Symbolic(x)) => x == v,
            (ConditionTest::LessOrEqual(t), Value::Numeric(x)) => x <= t,
            (ConditionTest::Greater(t), Value::Numeric(x)) => x > t,
            _ => panic!(
                "condition on attribute {} does not match the example's value kind",
                self.attribute
            ),
        }
    }

    /// Renders the condition using the schema's attribute and value names.
    pub fn render(&self, schema: &Schema) -> String {
        let attr = schema.attribute(self.attribute);
        match self.test {
            ConditionTest::Equals(v) => {
                let values = attr
                    .symbolic_values()
                    .expect("equality test on a numeric attribute");
                format!("{}={}", attr.name, values[v as usize])
            }
            ConditionTest::LessOrEqual(t) => format!("{}<={}", attr.name, t),
            ConditionTest::Greater(t) => format!("{}>{}", attr.name, t),
        }
    }
}

/// A conjunction of conditions with an implicit positive-class head. The
/// empty conjunction is legal and covers everything.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Rule {
    pub conditions: Vec<Condition>,
}

impl Rule {
    pub fn empty() -> Self {
        Rule::default()
    }

    pub fn new(conditions: Vec<Condition>) -> Self {
        Rule { conditions }
    }

    /// True iff every condition is satisfied by the example.
    pub fn covers(&self, example: &Example) -> bool {
        self.conditions.iter().all(|c| c.holds(example))
    }

    pub fn render(&self, schema: &Schema, head: &str) -> String {
        if self.conditions.is_empty() {
            return format!("IF <always> THEN {head}");
        }
        let body = self
            .conditions
            .iter()
            .map(|c| c.render(schema))
            .collect::<Vec<_>>()
            .join(" AND ");
        format!("IF {body} THEN {head}")
    }
}

/// An unordered disjunction of rules. An example is classified positive iff
/// some rule covers it, so classification is order-independent.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Theory {
    pub rules: Vec<Rule>,
}

impl Theory {
    pub fn new(rules: Vec<Rule>) -> Self {
        Theory { rules }
    }

    pub fn classify(&self, example: &Example) -> Label {
        if self.rules.iter().any(|r| r.covers(example)) {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn render(&self, schema: &Schema, head: &str) -> String {
        self.rules
            .iter()
            .map(|r| r.render(schema, head))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Covered positive and negative counts of a rule over some collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoverageStats {
    pub positives: usize,
    pub negatives: usize,
}

impl CoverageStats {
    pub fn new(positives: usize, negatives: usize) -> Self {
        CoverageStats {
            positives,
            negatives,
        }
    }

    pub fn total(self) -> usize {
        self.positives + self.negatives
    }

    /// Fraction of covered examples that are positive. Panics when the rule
    /// covers nothing; callers must reject zero-coverage rules first.
    pub fn precision(self) -> f64 {
        assert!(self.total() > 0, "precision of a zero-coverage rule");
        self.positives as f64 / self.total() as f64
    }
}

/// Exact covered-positive / covered-negative counts of `rule` over the given
/// examples.
pub fn coverage<'a, I>(rule: &Rule, examples: I) -> CoverageStats
where
    I: IntoIterator<Item = &'a Example>,
{
    let mut stats = CoverageStats::default();
    for ex in examples {
        if rule.covers(ex) {
            if ex.label.is_positive() {
                stats.positives += 1;
            } else {
                stats.negatives += 1;
            }
        }
    }
    stats
}

/// Coverage of `rule` over the selected examples of a dataset.
pub fn coverage_indexed(rule: &Rule, data: &Dataset, indices: &[usize]) -> CoverageStats {
    coverage(rule, indices.iter().map(|&i| data.example(i)))
}

/// Fraction of examples the theory classifies correctly, in `[0, 1]`.
///
/// Panics on an empty collection.
pub fn accuracy<'a, I>(theory: &Theory, examples: I) -> f64
where
    I: IntoIterator<Item = &'a Example>,
{
    let mut correct = 0usize;
    let mut total = 0usize;
    for ex in examples {
        total += 1;
        if theory.classify(ex) == ex.label {
            correct += 1;
        }
    }
    assert!(total > 0, "accuracy of an empty collection");
    correct as f64 / total as f64
}
