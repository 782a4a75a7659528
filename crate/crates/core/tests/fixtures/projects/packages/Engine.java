package app.core;

public class Engine {
    Part part = new Part();

    void start() {
        String label = part.name();
        part.attach(new Part(), label);
        app.core.Part q = part.self();
        Object o = part.self();
        part.attach(this, label);
    }
}
